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

#ifndef PROSODY_SIGNAL_FEATURES_H_
#define PROSODY_SIGNAL_FEATURES_H_

#include <cstddef>
#include <span>
#include <vector>

#include "prosody/matrix.h"
#include "prosody/signal/audio.h"

namespace prosody::signal {

inline constexpr double kLogOffset = 1e-6;
inline constexpr int kDefaultFrameSize = 1024;
inline constexpr int kDefaultHop = 256;
inline constexpr int kDefaultMels = 80;

// Linear STFT magnitudes, T x (frame_size/2 + 1).
struct Spectrogram {
  Matrix frames;
  int frame_size = 0;
  int hop = 0;
  int sample_rate = 0;
};

// Natural-log mel magnitudes, T x n_mels.
struct MelSpectrogram {
  Matrix frames;
  int n_mels = 0;
  double offset = kLogOffset;
};

// MFCC coefficients 1..K per frame (coefficient 0 is dropped), T x K.
struct CepstraSequence {
  Matrix frames;
  int num_coeffs() const { return static_cast<int>(frames.cols()); }
  std::size_t num_frames() const { return frames.rows(); }
};

// Number of frames for a signal of `length` samples: ceil(length / hop).
std::size_t num_frames(std::size_t length, int hop);

// Frame t covers samples [t*hop, t*hop + frame_size); samples past the end
// are zero. Returns a T x frame_size matrix.
Matrix frame_signal(std::span<const double> samples, int frame_size = kDefaultFrameSize,
                    int hop = kDefaultHop);

// Periodic Hann window of length n.
std::vector<double> hann_window(int n);

Spectrogram stft_magnitude(const Waveform& w, int frame_size = kDefaultFrameSize,
                           int hop = kDefaultHop);

double hz_to_mel(double hz);
double mel_to_hz(double mel);

// Triangular HTK-scale filterbank spanning [0, sample_rate/2]; n_mels x n_bins.
Matrix mel_filterbank(int n_mels, int frame_size, int sample_rate);

MelSpectrogram mel_log_spectrogram(const Spectrogram& s, int n_mels = kDefaultMels,
                                   double offset = kLogOffset);

// Orthonormal DCT-II of `x` (all coefficients).
std::vector<double> dct_ortho(std::span<const double> x);

// Keeps coefficients 1..num_coeffs of the orthonormal DCT of each log-mel row.
// Throws kOutOfRange unless 1 <= num_coeffs <= n_mels.
CepstraSequence mfcc(const MelSpectrogram& m, int num_coeffs);

// Per-frame L2 norm of the magnitude row.
std::vector<double> frame_energy(const Spectrogram& s);

}  // namespace prosody::signal

#endif  // PROSODY_SIGNAL_FEATURES_H_
