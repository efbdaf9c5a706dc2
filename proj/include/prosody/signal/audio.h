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

#ifndef PROSODY_SIGNAL_AUDIO_H_
#define PROSODY_SIGNAL_AUDIO_H_

#include <filesystem>
#include <vector>

namespace prosody::signal {

// Mono PCM audio. Samples are nominally in [-1, 1].
struct Waveform {
  std::vector<double> samples;
  int sample_rate = 0;

  double duration_sec() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
  }
};

// Throws Error with kInvalidArgument unless sample_rate > 0 and all samples
// are finite.
void validate(const Waveform& w);

enum class WavEncoding { kPcm16, kFloat32 };

// Reads a RIFF/WAVE file holding PCM16 or float32 data, mono or stereo.
// Stereo is mean-downmixed; PCM16 is scaled by 2^-15.
// Errors: kUnreadableFile, kUnsupportedCodec, kMalformedFile, kEmptyAudio.
Waveform load_wav(const std::filesystem::path& path);

// Writes `channels` interleaved channels; `samples.size()` must be a
// multiple of `channels`. PCM16 output is clipped to [-1, 1).
void write_wav(const std::filesystem::path& path, const std::vector<double>& samples,
               int sample_rate, int channels = 1,
               WavEncoding encoding = WavEncoding::kPcm16);

inline void write_wav(const std::filesystem::path& path, const Waveform& w,
                      WavEncoding encoding = WavEncoding::kPcm16) {
  write_wav(path, w.samples, w.sample_rate, 1, encoding);
}

}  // namespace prosody::signal

#endif  // PROSODY_SIGNAL_AUDIO_H_
