// Copyright (c) 2026 The prosodykit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PROSODY_ADANORM_BACKWARD_H_
#define PROSODY_ADANORM_BACKWARD_H_

#include <vector>

#include "prosody/adanorm/adaptive_norm.h"

namespace prosody::adanorm {

// Inputs and intermediates of the convolution-path normalization
//   y   = rho (gamma_LN x_LN + beta_LN) + (1 - rho)(gamma_SE x_IN + beta_SE)
//   out = gamma_energy (gamma_pitch y + beta_pitch) + beta_energy
// kept for the backward pass.
struct AdaptiveNormCache {
  bool populated = false;
  double rho = 0.0;
  Tensor3 x_ln;
  Tensor3 x_in;
  std::vector<double> ln_inv_std;  // per (frame, batch)
  std::vector<double> in_inv_std;  // per (channel, batch)
  Tensor3 y;
  AffinePair ln;
  std::vector<AffinePair> speaker;
  AffineField pitch;
  AffineField energy;

  bool empty() const { return !populated; }
};

struct AdaptiveNormForward {
  Tensor3 output;
  AdaptiveNormCache cache;
};

AdaptiveNormForward adaptive_norm_forward(const Tensor3& x, const AffinePair& ln,
                                          const std::vector<AffinePair>& speaker,
                                          const AffineField& pitch, const AffineField& energy,
                                          MixParam rho, double eps = kNormEps);

struct AdaptiveNormGrads {
  Tensor3 x;
  AffinePair ln;
  std::vector<AffinePair> speaker;
  AffineField pitch;
  AffineField energy;
  double rho = 0.0;
};

// Exact gradients of the cached forward with respect to every input and
// parameter. Throws kMissingCache for an empty cache and kShapeMismatch when
// the upstream gradient does not match the output.
AdaptiveNormGrads backward_adaptive_norm(const Tensor3& upstream,
                                         const AdaptiveNormCache& cache);

}  // namespace prosody::adanorm

#endif  // PROSODY_ADANORM_BACKWARD_H_
