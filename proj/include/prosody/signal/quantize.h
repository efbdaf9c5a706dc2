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

#ifndef PROSODY_SIGNAL_QUANTIZE_H_
#define PROSODY_SIGNAL_QUANTIZE_H_

#include <span>
#include <vector>

#include "prosody/matrix.h"

namespace prosody::signal {

struct QuantizedTrack {
  std::vector<int> indices;
  std::vector<double> bin_edges;  // n_bins + 1 edges, uniform over [lo, hi]
  Matrix one_hot;                 // T x n_bins

  int num_bins() const { return static_cast<int>(bin_edges.size()) - 1; }
};

// Uniform quantization of clipped values into n_bins bins over [lo, hi].
// Throws kInvalidArgument if lo >= hi or n_bins < 1.
QuantizedTrack quantize_track(std::span<const double> values, double lo, double hi,
                              int n_bins = 256);

// Bin centers for each index.
std::vector<double> dequantize(const QuantizedTrack& q);

}  // namespace prosody::signal

#endif  // PROSODY_SIGNAL_QUANTIZE_H_
