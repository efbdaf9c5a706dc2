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

#ifndef PROSODY_METRICS_EVALUATE_H_
#define PROSODY_METRICS_EVALUATE_H_

#include <optional>

#include "prosody/metrics/prosody_metrics.h"
#include "prosody/pitch/yin.h"
#include "prosody/signal/audio.h"

namespace prosody::metrics {

struct PairConfig {
  int sample_rate = 22050;
  int frame_size = 1024;
  int hop = 256;
  int n_mels = 80;
  int num_coeffs = 13;
  double log_offset = signal::kLogOffset;
  double gpe_threshold = kDefaultGpeThreshold;
  McdScaling mcd_scaling = McdScaling::kNone;
  pitch::YinConfig yin;
};

struct MetricsReport {
  std::optional<double> gpe;  // undefined when no frame is voiced in both
  double vde = 0.0;
  double ffe = 0.0;
  double mcd = 0.0;
  std::size_t frames_total = 0;
  std::size_t frames_both_voiced = 0;
  std::size_t gross_pitch_frames = 0;
  std::size_t voicing_error_frames = 0;
  double gpe_threshold = kDefaultGpeThreshold;
  int num_coeffs = 13;
  McdScaling mcd_scaling = McdScaling::kNone;

  bool operator==(const MetricsReport&) const = default;
};

// Intermediate tracks kept for inspection by callers and tests.
struct PairAnalysis {
  MetricsReport report;
  pitch::PitchTrack ref_pitch;
  pitch::PitchTrack pred_pitch;
  signal::CepstraSequence ref_cepstra;
  signal::CepstraSequence pred_cepstra;
};

// Pads both waveforms to the longer length in the time domain, tracks pitch,
// extracts MFCCs and computes all four metrics over the shared frame count.
// Throws kSampleRateMismatch if either input differs from cfg.sample_rate.
PairAnalysis analyze_pair(const signal::Waveform& ref, const signal::Waveform& pred,
                          const PairConfig& cfg);

inline MetricsReport evaluate_pair(const signal::Waveform& ref, const signal::Waveform& pred,
                                   const PairConfig& cfg) {
  return analyze_pair(ref, pred, cfg).report;
}

}  // namespace prosody::metrics

#endif  // PROSODY_METRICS_EVALUATE_H_
