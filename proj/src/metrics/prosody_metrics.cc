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

#include "prosody/metrics/prosody_metrics.h"

#include <cmath>
#include <numbers>
#include <string>

#include "prosody/error.h"

namespace prosody::metrics {

FrameErrorCounts count_frame_errors(const TrackPair& pair, double threshold) {
  const auto& ref = pair.ref;
  const auto& pred = pair.pred;
  require(ref.size() == pred.size() && ref.voiced.size() == ref.size() &&
              pred.voiced.size() == pred.size(),
          ErrorCode::kShapeMismatch,
          "pitch tracks differ in length (" + std::to_string(ref.size()) + " vs " +
              std::to_string(pred.size()) + ")");
  FrameErrorCounts counts;
  counts.total = ref.size();
  for (std::size_t t = 0; t < ref.size(); ++t) {
    const bool v = ref.voiced[t];
    const bool vp = pred.voiced[t];
    if (v != vp) ++counts.voicing;
    if (v && vp) {
      ++counts.both_voiced;
      if (std::abs(ref.f0[t] - pred.f0[t]) > threshold * ref.f0[t]) ++counts.gross_pitch;
    }
  }
  return counts;
}

std::optional<double> gpe(const TrackPair& pair, double threshold) {
  const FrameErrorCounts c = count_frame_errors(pair, threshold);
  if (c.both_voiced == 0) return std::nullopt;
  return static_cast<double>(c.gross_pitch) / static_cast<double>(c.both_voiced);
}

double vde(const TrackPair& pair) {
  const FrameErrorCounts c = count_frame_errors(pair);
  require(c.total > 0, ErrorCode::kEmptyInput, "VDE undefined for zero frames");
  return static_cast<double>(c.voicing) / static_cast<double>(c.total);
}

double ffe(const TrackPair& pair, double threshold) {
  const FrameErrorCounts c = count_frame_errors(pair, threshold);
  require(c.total > 0, ErrorCode::kEmptyInput, "FFE undefined for zero frames");
  return static_cast<double>(c.gross_pitch + c.voicing) / static_cast<double>(c.total);
}

double mcd_db_factor() { return 10.0 / std::numbers::ln10 * std::numbers::sqrt2; }

double mcd(const signal::CepstraSequence& ref, const signal::CepstraSequence& pred,
           int num_coeffs, McdScaling scaling) {
  const std::size_t frames = ref.num_frames();
  require(frames == pred.num_frames(), ErrorCode::kShapeMismatch,
          "cepstra differ in frame count; pad before computing MCD");
  require(frames > 0, ErrorCode::kEmptyInput, "MCD undefined for zero frames");
  require(num_coeffs >= 1 && num_coeffs <= ref.num_coeffs() && num_coeffs <= pred.num_coeffs(),
          ErrorCode::kOutOfRange,
          "MCD needs " + std::to_string(num_coeffs) + " coefficients per frame");

  double total = 0.0;
  for (std::size_t t = 0; t < frames; ++t) {
    auto a = ref.frames.row(t);
    auto b = pred.frames.row(t);
    double acc = 0.0;
    for (int k = 0; k < num_coeffs; ++k) {
      const double diff = b[k] - a[k];
      acc += diff * diff;
    }
    total += std::sqrt(acc);
  }
  double value = total / static_cast<double>(frames);
  if (scaling == McdScaling::kDb) value *= mcd_db_factor();
  return value;
}

}  // namespace prosody::metrics
