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

#include "prosody/signal/features.h"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "prosody/error.h"

namespace prosody::signal {
namespace {

// FFTW planning is not thread-safe; execution with the new-array interface
// is. Plans are created once per size under a lock and reused.
class RealFftPlans {
 public:
  static RealFftPlans& instance() {
    static RealFftPlans plans;
    return plans;
  }

  fftw_plan get(int n) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    double* in = fftw_alloc_real(static_cast<std::size_t>(n));
    fftw_complex* out = fftw_alloc_complex(static_cast<std::size_t>(n / 2 + 1));
    fftw_plan plan = fftw_plan_dft_r2c_1d(n, in, out, FFTW_ESTIMATE);
    fftw_free(in);
    fftw_free(out);
    plans_.emplace(n, plan);
    return plan;
  }

  ~RealFftPlans() {
    for (auto& [n, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  std::mutex mu_;
  std::map<int, fftw_plan> plans_;
};

struct FftwDeleter {
  void operator()(void* p) const { fftw_free(p); }
};

}  // namespace

std::size_t num_frames(std::size_t length, int hop) {
  require(hop >= 1, ErrorCode::kInvalidArgument, "hop must be >= 1");
  const auto h = static_cast<std::size_t>(hop);
  return (length + h - 1) / h;
}

Matrix frame_signal(std::span<const double> samples, int frame_size, int hop) {
  require(frame_size >= 1, ErrorCode::kInvalidArgument, "frame size must be >= 1");
  const std::size_t count = num_frames(samples.size(), hop);
  Matrix frames(count, static_cast<std::size_t>(frame_size));
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t start = t * static_cast<std::size_t>(hop);
    const std::size_t stop = std::min(samples.size(), start + frames.cols());
    auto row = frames.row(t);
    for (std::size_t i = start; i < stop; ++i) row[i - start] = samples[i];
  }
  return frames;
}

std::vector<double> hann_window(int n) {
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    w[static_cast<std::size_t>(i)] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / n);
  }
  return w;
}

Spectrogram stft_magnitude(const Waveform& w, int frame_size, int hop) {
  Matrix frames = frame_signal(w.samples, frame_size, hop);
  const std::size_t n = static_cast<std::size_t>(frame_size);
  const std::size_t bins = n / 2 + 1;
  const std::vector<double> window = hann_window(frame_size);

  Spectrogram s;
  s.frame_size = frame_size;
  s.hop = hop;
  s.sample_rate = w.sample_rate;
  s.frames = Matrix(frames.rows(), bins);

  fftw_plan plan = RealFftPlans::instance().get(frame_size);
  std::unique_ptr<double, FftwDeleter> in(fftw_alloc_real(n));
  std::unique_ptr<fftw_complex, FftwDeleter> out(fftw_alloc_complex(bins));
  for (std::size_t t = 0; t < frames.rows(); ++t) {
    auto frame = frames.row(t);
    for (std::size_t i = 0; i < n; ++i) in.get()[i] = frame[i] * window[i];
    fftw_execute_dft_r2c(plan, in.get(), out.get());
    auto mag = s.frames.row(t);
    for (std::size_t k = 0; k < bins; ++k) {
      mag[k] = std::hypot(out.get()[k][0], out.get()[k][1]);
    }
  }
  return s;
}

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

Matrix mel_filterbank(int n_mels, int frame_size, int sample_rate) {
  require(n_mels >= 1, ErrorCode::kInvalidArgument, "n_mels must be >= 1");
  require(sample_rate > 0, ErrorCode::kInvalidArgument, "sample rate must be positive");
  const std::size_t bins = static_cast<std::size_t>(frame_size) / 2 + 1;
  const double mel_hi = hz_to_mel(sample_rate / 2.0);

  std::vector<double> edges(static_cast<std::size_t>(n_mels) + 2);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    edges[i] = mel_to_hz(mel_hi * static_cast<double>(i) / (n_mels + 1));
  }

  Matrix fb(static_cast<std::size_t>(n_mels), bins);
  for (std::size_t m = 0; m < fb.rows(); ++m) {
    const double left = edges[m], center = edges[m + 1], right = edges[m + 2];
    for (std::size_t k = 0; k < bins; ++k) {
      const double f = static_cast<double>(k) * sample_rate / frame_size;
      double weight = 0.0;
      if (f > left && f <= center) {
        weight = (f - left) / (center - left);
      } else if (f > center && f < right) {
        weight = (right - f) / (right - center);
      }
      fb(m, k) = weight;
    }
  }
  return fb;
}

MelSpectrogram mel_log_spectrogram(const Spectrogram& s, int n_mels, double offset) {
  require(offset > 0.0, ErrorCode::kInvalidArgument, "log offset must be positive");
  const Matrix fb = mel_filterbank(n_mels, s.frame_size, s.sample_rate);
  require(fb.cols() == s.frames.cols(), ErrorCode::kShapeMismatch,
          "spectrogram bin count does not match frame size");

  MelSpectrogram out;
  out.n_mels = n_mels;
  out.offset = offset;
  out.frames = Matrix(s.frames.rows(), static_cast<std::size_t>(n_mels));
  for (std::size_t t = 0; t < s.frames.rows(); ++t) {
    auto mag = s.frames.row(t);
    for (std::size_t m = 0; m < fb.rows(); ++m) {
      auto weights = fb.row(m);
      double acc = 0.0;
      for (std::size_t k = 0; k < mag.size(); ++k) acc += weights[k] * mag[k];
      out.frames(t, m) = std::log(offset + acc);
    }
  }
  return out;
}

std::vector<double> dct_ortho(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<double> out(n, 0.0);
  if (n == 0) return out;
  const double scale0 = std::sqrt(1.0 / n);
  const double scale = std::sqrt(2.0 / n);
  for (std::size_t k = 0; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += x[i] * std::cos(std::numbers::pi * (2.0 * i + 1.0) * k / (2.0 * n));
    }
    out[k] = acc * (k == 0 ? scale0 : scale);
  }
  return out;
}

CepstraSequence mfcc(const MelSpectrogram& m, int num_coeffs) {
  const int n_mels = static_cast<int>(m.frames.cols());
  if (num_coeffs < 1 || num_coeffs > n_mels) {
    fail(ErrorCode::kOutOfRange, "MFCC count " + std::to_string(num_coeffs) +
                                     " outside [1, " + std::to_string(n_mels) + "]");
  }
  // DCT basis rows 1..K, precomputed once.
  const std::size_t n = m.frames.cols();
  const std::size_t k_count = static_cast<std::size_t>(num_coeffs);
  Matrix basis(k_count, n);
  const double scale = std::sqrt(2.0 / n);
  for (std::size_t k = 0; k < k_count; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      basis(k, i) =
          scale * std::cos(std::numbers::pi * (2.0 * i + 1.0) * (k + 1) / (2.0 * n));
    }
  }

  CepstraSequence c;
  c.frames = Matrix(m.frames.rows(), k_count);
  for (std::size_t t = 0; t < m.frames.rows(); ++t) {
    auto row = m.frames.row(t);
    for (std::size_t k = 0; k < k_count; ++k) {
      auto b = basis.row(k);
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) acc += b[i] * row[i];
      c.frames(t, k) = acc;
    }
  }
  return c;
}

std::vector<double> frame_energy(const Spectrogram& s) {
  std::vector<double> energy(s.frames.rows());
  for (std::size_t t = 0; t < s.frames.rows(); ++t) {
    double acc = 0.0;
    for (double v : s.frames.row(t)) acc += v * v;
    energy[t] = std::sqrt(acc);
  }
  return energy;
}

}  // namespace prosody::signal
