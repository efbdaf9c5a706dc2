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

#include "fixtures.h"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace prosody::testing {

signal::Waveform tone(double freq_hz, double seconds, int sample_rate, double amplitude,
                      double phase) {
  const auto n = static_cast<std::size_t>(std::lround(seconds * sample_rate));
  signal::Waveform w;
  w.sample_rate = sample_rate;
  w.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    w.samples[i] = amplitude * std::sin(2.0 * std::numbers::pi * freq_hz *
                                            static_cast<double>(i) / sample_rate +
                                        phase);
  }
  return w;
}

signal::Waveform silence(double seconds, int sample_rate) {
  signal::Waveform w;
  w.sample_rate = sample_rate;
  w.samples.assign(static_cast<std::size_t>(std::lround(seconds * sample_rate)), 0.0);
  return w;
}

signal::Waveform noise(double seconds, std::uint64_t seed, double stddev, int sample_rate) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, stddev);
  signal::Waveform w = silence(seconds, sample_rate);
  for (double& s : w.samples) s = dist(rng);
  return w;
}

signal::Waveform concat(const signal::Waveform& a, const signal::Waveform& b) {
  signal::Waveform w = a;
  w.samples.insert(w.samples.end(), b.samples.begin(), b.samples.end());
  return w;
}

signal::Waveform truncate(const signal::Waveform& w, std::size_t samples) {
  signal::Waveform out = w;
  out.samples.resize(std::min(samples, w.samples.size()));
  return out;
}

std::vector<double> uniform(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

adanorm::Tensor3 random_tensor(std::mt19937_64& rng, std::size_t frames, std::size_t channels,
                               std::size_t batch, double lo, double hi) {
  adanorm::Tensor3 x(frames, channels, batch);
  x.data() = uniform(rng, x.size(), lo, hi);
  return x;
}

adanorm::AffinePair random_affine(std::mt19937_64& rng, std::size_t channels) {
  return adanorm::AffinePair{uniform(rng, channels, 0.5, 1.5), uniform(rng, channels)};
}

pitch::PitchTrack random_track(std::mt19937_64& rng, std::size_t frames) {
  std::uniform_real_distribution<double> hz(50.0, 400.0);
  std::bernoulli_distribution voiced(0.6);
  pitch::PitchTrack t;
  t.hop = 256;
  t.sample_rate = kSampleRate;
  for (std::size_t i = 0; i < frames; ++i) {
    const bool v = voiced(rng);
    t.voiced.push_back(v);
    t.f0.push_back(v ? hz(rng) : 0.0);
    t.aperiodicity.push_back(v ? 0.05 : 0.9);
  }
  return t;
}

TempDir::TempDir(const std::string& tag) {
  std::string pattern = (std::filesystem::temp_directory_path() / (tag + "-XXXXXX")).string();
  if (mkdtemp(pattern.data()) == nullptr) throw std::runtime_error("mkdtemp failed");
  path_ = pattern;
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace prosody::testing
