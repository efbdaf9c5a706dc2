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

#include "prosody/adanorm/backward.h"

#include <cmath>

#include "prosody/error.h"

namespace prosody::adanorm {

AdaptiveNormForward adaptive_norm_forward(const Tensor3& x, const AffinePair& ln,
                                          const std::vector<AffinePair>& speaker,
                                          const AffineField& pitch, const AffineField& energy,
                                          MixParam rho, double eps) {
  const std::size_t frames = x.frames(), channels = x.channels(), batch = x.batch();
  AdaptiveNormForward fwd;
  AdaptiveNormCache& cache = fwd.cache;
  cache.y = conv_adaptive_norm(x, ln, speaker, rho, eps);
  fwd.output = pitch_energy_modulate(cache.y, pitch, energy);

  cache.x_ln = normalize_over_channels(x, eps);
  cache.x_in = instance_norm(x, eps);
  cache.ln_inv_std.assign(frames * batch, 0.0);
  cache.in_inv_std.assign(channels * batch, 0.0);
  for (std::size_t b = 0; b < batch; ++b) {
    for (std::size_t t = 0; t < frames; ++t) {
      double mean = 0.0, var = 0.0;
      for (std::size_t c = 0; c < channels; ++c) mean += x(t, c, b);
      mean /= static_cast<double>(channels);
      for (std::size_t c = 0; c < channels; ++c) var += (x(t, c, b) - mean) * (x(t, c, b) - mean);
      var /= static_cast<double>(channels);
      cache.ln_inv_std[b * frames + t] = 1.0 / std::sqrt(var + eps);
    }
    for (std::size_t c = 0; c < channels; ++c) {
      double mean = 0.0, var = 0.0;
      for (std::size_t t = 0; t < frames; ++t) mean += x(t, c, b);
      mean /= static_cast<double>(frames);
      for (std::size_t t = 0; t < frames; ++t) var += (x(t, c, b) - mean) * (x(t, c, b) - mean);
      var /= static_cast<double>(frames);
      cache.in_inv_std[b * channels + c] = 1.0 / std::sqrt(var + eps);
    }
  }
  cache.rho = rho.value();
  cache.ln = ln;
  cache.speaker = speaker;
  cache.pitch = pitch;
  cache.energy = energy;
  cache.populated = true;
  return fwd;
}

AdaptiveNormGrads backward_adaptive_norm(const Tensor3& upstream,
                                         const AdaptiveNormCache& cache) {
  if (cache.empty()) fail(ErrorCode::kMissingCache, "backward called without a forward cache");
  const Tensor3& y = cache.y;
  require(upstream.same_shape(y), ErrorCode::kShapeMismatch,
          "upstream gradient does not match the forward output");
  const std::size_t frames = y.frames(), channels = y.channels(), batch = y.batch();
  const double rho = cache.rho;
  const double one_minus = 1.0 - rho;

  AdaptiveNormGrads g;
  g.x = Tensor3(frames, channels, batch);
  g.ln = AffinePair{std::vector<double>(channels, 0.0), std::vector<double>(channels, 0.0)};
  g.speaker.assign(batch, g.ln);
  g.pitch = AffineField{Tensor3(frames, channels, batch), Tensor3(frames, channels, batch)};
  g.energy = g.pitch;

  // Gradients flowing into the two normalized tensors.
  Tensor3 grad_x_ln(frames, channels, batch);
  Tensor3 grad_x_in(frames, channels, batch);

  for (std::size_t b = 0; b < batch; ++b) {
    const AffinePair& se = cache.speaker[b];
    for (std::size_t t = 0; t < frames; ++t) {
      for (std::size_t c = 0; c < channels; ++c) {
        const double up = upstream(t, c, b);
        const double gp = cache.pitch.gamma(t, c, b);
        const double bp = cache.pitch.beta(t, c, b);
        const double ge = cache.energy.gamma(t, c, b);
        const double yv = y(t, c, b);

        g.energy.gamma(t, c, b) = up * (gp * yv + bp);
        g.energy.beta(t, c, b) = up;
        const double inner = up * ge;
        g.pitch.gamma(t, c, b) = inner * yv;
        g.pitch.beta(t, c, b) = inner;
        const double gy = inner * gp;

        const double x_ln = cache.x_ln(t, c, b);
        const double x_in = cache.x_in(t, c, b);
        const double ln_branch = cache.ln.gamma[c] * x_ln + cache.ln.beta[c];
        const double in_branch = se.gamma[c] * x_in + se.beta[c];
        g.rho += gy * (ln_branch - in_branch);

        g.ln.gamma[c] += gy * rho * x_ln;
        g.ln.beta[c] += gy * rho;
        g.speaker[b].gamma[c] += gy * one_minus * x_in;
        g.speaker[b].beta[c] += gy * one_minus;

        grad_x_ln(t, c, b) = gy * rho * cache.ln.gamma[c];
        grad_x_in(t, c, b) = gy * one_minus * se.gamma[c];
      }
    }
  }

  // d/dx of xhat = (x - mean) * inv_std over a group of n entries:
  //   dx = inv_std * (g - mean(g) - xhat * mean(g * xhat)).
  for (std::size_t b = 0; b < batch; ++b) {
    for (std::size_t t = 0; t < frames; ++t) {
      double mean_g = 0.0, mean_gx = 0.0;
      for (std::size_t c = 0; c < channels; ++c) {
        mean_g += grad_x_ln(t, c, b);
        mean_gx += grad_x_ln(t, c, b) * cache.x_ln(t, c, b);
      }
      mean_g /= static_cast<double>(channels);
      mean_gx /= static_cast<double>(channels);
      const double inv = cache.ln_inv_std[b * frames + t];
      for (std::size_t c = 0; c < channels; ++c) {
        g.x(t, c, b) += inv * (grad_x_ln(t, c, b) - mean_g - cache.x_ln(t, c, b) * mean_gx);
      }
    }
    for (std::size_t c = 0; c < channels; ++c) {
      double mean_g = 0.0, mean_gx = 0.0;
      for (std::size_t t = 0; t < frames; ++t) {
        mean_g += grad_x_in(t, c, b);
        mean_gx += grad_x_in(t, c, b) * cache.x_in(t, c, b);
      }
      mean_g /= static_cast<double>(frames);
      mean_gx /= static_cast<double>(frames);
      const double inv = cache.in_inv_std[b * channels + c];
      for (std::size_t t = 0; t < frames; ++t) {
        g.x(t, c, b) += inv * (grad_x_in(t, c, b) - mean_g - cache.x_in(t, c, b) * mean_gx);
      }
    }
  }
  return g;
}

}  // namespace prosody::adanorm
