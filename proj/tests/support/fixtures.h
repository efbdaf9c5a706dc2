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

#ifndef PROSODY_TESTS_SUPPORT_FIXTURES_H_
#define PROSODY_TESTS_SUPPORT_FIXTURES_H_

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "prosody/adanorm/tensor.h"
#include "prosody/pitch/yin.h"
#include "prosody/signal/audio.h"

namespace prosody::testing {

inline constexpr int kSampleRate = 22050;

// a * sin(2 pi f n / sr + phase) for n < round(seconds * sr).
signal::Waveform tone(double freq_hz, double seconds, int sample_rate = kSampleRate,
                      double amplitude = 0.5, double phase = 0.0);

signal::Waveform silence(double seconds, int sample_rate = kSampleRate);

// Gaussian noise with the given standard deviation.
signal::Waveform noise(double seconds, std::uint64_t seed, double stddev = 0.3,
                       int sample_rate = kSampleRate);

signal::Waveform concat(const signal::Waveform& a, const signal::Waveform& b);

// First `samples` samples of w.
signal::Waveform truncate(const signal::Waveform& w, std::size_t samples);

// Uniform draws in [lo, hi].
std::vector<double> uniform(std::mt19937_64& rng, std::size_t n, double lo = -1.0,
                            double hi = 1.0);

adanorm::Tensor3 random_tensor(std::mt19937_64& rng, std::size_t frames, std::size_t channels,
                               std::size_t batch, double lo = -1.0, double hi = 1.0);

adanorm::AffinePair random_affine(std::mt19937_64& rng, std::size_t channels);

// Random aligned pitch tracks of T frames with pitch in [50, 400] Hz.
// Unvoiced frames carry f0 = 0.
pitch::PitchTrack random_track(std::mt19937_64& rng, std::size_t frames);

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "prosodykit");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace prosody::testing

#endif  // PROSODY_TESTS_SUPPORT_FIXTURES_H_
