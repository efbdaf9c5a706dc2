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

#ifndef PROSODY_PITCH_YIN_H_
#define PROSODY_PITCH_YIN_H_

#include <span>
#include <vector>

#include "prosody/signal/audio.h"

namespace prosody::pitch {

struct YinConfig {
  int frame_size = 1024;
  int hop = 256;
  double f_min = 50.0;
  double f_max = 600.0;
  double threshold = 0.15;  // absolute threshold on the CMND dip
};

// Throws kInvalidArgument unless 0 < f_min < f_max <= sample_rate/2,
// 0 < threshold < 1, and frame/hop are positive.
void validate(const YinConfig& cfg, int sample_rate);

// Per-frame F0 track. f0 is 0 on unvoiced frames.
struct PitchTrack {
  std::vector<double> f0;
  std::vector<bool> voiced;
  std::vector<double> aperiodicity;
  int hop = 0;
  int sample_rate = 0;

  std::size_t size() const { return f0.size(); }
};

// Integer lag bounds [lo, hi] searched for a period.
struct LagRange {
  int lo = 0;
  int hi = 0;
};

// lo = ceil(sr/f_max), hi = floor(sr/f_min). Throws kOutOfRange when the
// range is empty or the frame is too short to evaluate lag hi + 1.
LagRange lag_range(const YinConfig& cfg, int sample_rate);

// d(tau) = sum_{j<W} (x_j - x_{j+tau})^2 for tau = 0..tau_max, with a fixed
// integration window W = frame.size() - tau_max.
std::vector<double> difference_function(std::span<const double> frame, int tau_max);

// Cumulative mean normalized difference: d'(0) = 1,
// d'(tau) = d(tau) * tau / sum_{j=1..tau} d(j), and 1 when the sum is 0.
std::vector<double> cmnd(std::span<const double> d);

struct PeriodEstimate {
  double tau = 0.0;  // refined lag in samples
  bool voiced = false;
  double aperiodicity = 1.0;  // CMND at the chosen integer lag
};

// Absolute-threshold search with local-minimum descent and parabolic
// refinement. Falls back to the global minimum (unvoiced) when no lag in
// range dips below the threshold.
PeriodEstimate pick_period(std::span<const double> dprime, const YinConfig& cfg,
                           int sample_rate);

PitchTrack yin_track(const signal::Waveform& w, const YinConfig& cfg);

}  // namespace prosody::pitch

#endif  // PROSODY_PITCH_YIN_H_
