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

#ifndef PROSODY_METRICS_PROSODY_METRICS_H_
#define PROSODY_METRICS_PROSODY_METRICS_H_

#include <optional>
#include <span>

#include "prosody/pitch/yin.h"
#include "prosody/signal/features.h"

namespace prosody::metrics {

inline constexpr double kDefaultGpeThreshold = 0.2;

// Reference and predicted pitch tracks over the same frames.
struct TrackPair {
  const pitch::PitchTrack& ref;
  const pitch::PitchTrack& pred;
};

// Integer frame tallies from which GPE, VDE and FFE are derived.
struct FrameErrorCounts {
  std::size_t total = 0;
  std::size_t both_voiced = 0;
  std::size_t gross_pitch = 0;  // both voiced and |p - p'| > threshold * p
  std::size_t voicing = 0;      // v != v'
};

// Throws kShapeMismatch when the tracks have different lengths.
FrameErrorCounts count_frame_errors(const TrackPair& pair,
                                    double threshold = kDefaultGpeThreshold);

// Gross pitch error; nullopt when no frame is voiced in both tracks.
std::optional<double> gpe(const TrackPair& pair, double threshold = kDefaultGpeThreshold);

// Voicing decision error. Throws kEmptyInput for T = 0.
double vde(const TrackPair& pair);

// F0 frame error. Throws kEmptyInput for T = 0.
double ffe(const TrackPair& pair, double threshold = kDefaultGpeThreshold);

enum class McdScaling { kNone, kDb };

// 10 / ln(10) * sqrt(2), the dB convention some toolkits apply to MCD.
double mcd_db_factor();

// Mean over frames of the Euclidean distance between the first K stored
// coefficients. Throws kEmptyInput for T = 0, kShapeMismatch when frame
// counts differ and kOutOfRange when either side has fewer than K columns.
double mcd(const signal::CepstraSequence& ref, const signal::CepstraSequence& pred,
           int num_coeffs, McdScaling scaling = McdScaling::kNone);

}  // namespace prosody::metrics

#endif  // PROSODY_METRICS_PROSODY_METRICS_H_
