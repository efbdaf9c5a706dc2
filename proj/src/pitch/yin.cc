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

#include "prosody/pitch/yin.h"

#include <cmath>
#include <string>

#include "prosody/error.h"
#include "prosody/signal/features.h"

namespace prosody::pitch {

void validate(const YinConfig& cfg, int sample_rate) {
  require(sample_rate > 0, ErrorCode::kInvalidArgument, "sample rate must be positive");
  require(cfg.frame_size >= 2 && cfg.hop >= 1, ErrorCode::kInvalidArgument,
          "YIN frame size and hop must be positive");
  require(cfg.f_min > 0.0 && cfg.f_min < cfg.f_max, ErrorCode::kInvalidArgument,
          "YIN requires 0 < f_min < f_max");
  require(cfg.f_max <= sample_rate / 2.0, ErrorCode::kInvalidArgument,
          "YIN f_max exceeds Nyquist");
  require(cfg.threshold > 0.0 && cfg.threshold < 1.0, ErrorCode::kInvalidArgument,
          "YIN threshold must lie in (0, 1)");
}

LagRange lag_range(const YinConfig& cfg, int sample_rate) {
  LagRange r;
  r.lo = std::max(1, static_cast<int>(std::ceil(sample_rate / cfg.f_max)));
  r.hi = static_cast<int>(std::floor(sample_rate / cfg.f_min));
  if (r.lo > r.hi || r.hi + 1 >= cfg.frame_size) {
    fail(ErrorCode::kOutOfRange,
         "YIN lag range [" + std::to_string(r.lo) + ", " + std::to_string(r.hi) +
             "] is empty or does not fit frame size " + std::to_string(cfg.frame_size));
  }
  return r;
}

std::vector<double> difference_function(std::span<const double> frame, int tau_max) {
  require(tau_max >= 0 && static_cast<std::size_t>(tau_max) < frame.size(),
          ErrorCode::kOutOfRange, "tau_max must be smaller than the frame length");
  const std::size_t window = frame.size() - static_cast<std::size_t>(tau_max);
  std::vector<double> d(static_cast<std::size_t>(tau_max) + 1, 0.0);
  for (std::size_t tau = 1; tau < d.size(); ++tau) {
    double acc = 0.0;
    for (std::size_t j = 0; j < window; ++j) {
      const double diff = frame[j] - frame[j + tau];
      acc += diff * diff;
    }
    d[tau] = acc;
  }
  return d;
}

std::vector<double> cmnd(std::span<const double> d) {
  std::vector<double> out(d.size(), 1.0);
  double running = 0.0;
  for (std::size_t tau = 1; tau < d.size(); ++tau) {
    running += d[tau];
    out[tau] = running > 0.0 ? d[tau] * static_cast<double>(tau) / running : 1.0;
  }
  return out;
}

PeriodEstimate pick_period(std::span<const double> dprime, const YinConfig& cfg,
                           int sample_rate) {
  const LagRange range = lag_range(cfg, sample_rate);
  require(dprime.size() > static_cast<std::size_t>(range.hi), ErrorCode::kOutOfRange,
          "CMND shorter than the lag search range");

  PeriodEstimate est;
  int tau = -1;
  for (int t = range.lo; t <= range.hi; ++t) {
    if (dprime[t] < cfg.threshold) {
      while (t + 1 <= range.hi && dprime[t + 1] < dprime[t]) ++t;
      tau = t;
      est.voiced = true;
      break;
    }
  }
  if (tau < 0) {
    tau = range.lo;
    for (int t = range.lo + 1; t <= range.hi; ++t) {
      if (dprime[t] < dprime[tau]) tau = t;
    }
  }
  est.aperiodicity = dprime[tau];
  est.tau = tau;

  if (tau > range.lo && tau < range.hi) {
    const double a = dprime[tau - 1], b = dprime[tau], c = dprime[tau + 1];
    const double denom = a - 2.0 * b + c;
    if (denom > 0.0) {
      const double shift = 0.5 * (a - c) / denom;
      if (std::abs(shift) <= 1.0) est.tau = tau + shift;
    }
  }
  return est;
}

PitchTrack yin_track(const signal::Waveform& w, const YinConfig& cfg) {
  validate(cfg, w.sample_rate);
  const LagRange range = lag_range(cfg, w.sample_rate);
  const int tau_max = range.hi + 1;

  const Matrix frames = signal::frame_signal(w.samples, cfg.frame_size, cfg.hop);
  PitchTrack track;
  track.hop = cfg.hop;
  track.sample_rate = w.sample_rate;
  track.f0.assign(frames.rows(), 0.0);
  track.voiced.assign(frames.rows(), false);
  track.aperiodicity.assign(frames.rows(), 1.0);

  for (std::size_t t = 0; t < frames.rows(); ++t) {
    const std::vector<double> d = difference_function(frames.row(t), tau_max);
    const std::vector<double> dp = cmnd(d);
    const PeriodEstimate est = pick_period(dp, cfg, w.sample_rate);
    track.voiced[t] = est.voiced;
    track.aperiodicity[t] = est.aperiodicity;
    if (est.voiced) track.f0[t] = w.sample_rate / est.tau;
  }
  return track;
}

}  // namespace prosody::pitch
