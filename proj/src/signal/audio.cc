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

#include "prosody/signal/audio.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "prosody/error.h"

namespace prosody::signal {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

struct FormatChunk {
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits = 0;
};

}  // namespace

void validate(const Waveform& w) {
  require(w.sample_rate > 0, ErrorCode::kInvalidArgument, "sample rate must be positive");
  for (double s : w.samples) {
    require(std::isfinite(s), ErrorCode::kInvalidArgument, "waveform has non-finite samples");
  }
}

Waveform load_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kUnreadableFile, "cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (in.bad()) fail(ErrorCode::kUnreadableFile, "cannot read " + path.string());

  const std::string where = " in " + path.string();
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    fail(ErrorCode::kMalformedFile, "not a RIFF/WAVE file" + where);
  }

  FormatChunk fmt;
  bool have_fmt = false;
  const unsigned char* data = nullptr;
  std::size_t data_size = 0;
  bool have_data = false;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* header = bytes.data() + pos;
    std::uint32_t size = read_u32(header + 4);
    std::size_t body = pos + 8;
    std::size_t available = bytes.size() - body;
    if (std::memcmp(header, "fmt ", 4) == 0) {
      if (size < 16 || size > available) fail(ErrorCode::kMalformedFile, "bad fmt chunk" + where);
      const unsigned char* p = bytes.data() + body;
      fmt.format = read_u16(p);
      fmt.channels = read_u16(p + 2);
      fmt.sample_rate = read_u32(p + 4);
      fmt.bits = read_u16(p + 14);
      if (fmt.format == kFormatExtensible) {
        if (size < 26) fail(ErrorCode::kMalformedFile, "bad extensible fmt chunk" + where);
        fmt.format = read_u16(p + 24);
      }
      have_fmt = true;
    } else if (std::memcmp(header, "data", 4) == 0) {
      // Truncated writers sometimes leave a too-large size; take what exists.
      data = bytes.data() + body;
      data_size = std::min<std::size_t>(size, available);
      have_data = true;
    }
    pos = body + size + (size & 1u);
  }

  if (!have_fmt || !have_data) fail(ErrorCode::kMalformedFile, "missing fmt or data chunk" + where);
  if (fmt.channels < 1 || fmt.channels > 2) {
    fail(ErrorCode::kUnsupportedCodec,
         "unsupported channel count " + std::to_string(fmt.channels) + where);
  }
  const bool pcm16 = fmt.format == kFormatPcm && fmt.bits == 16;
  const bool float32 = fmt.format == kFormatFloat && fmt.bits == 32;
  if (!pcm16 && !float32) {
    fail(ErrorCode::kUnsupportedCodec, "unsupported codec (format " + std::to_string(fmt.format) +
                                           ", " + std::to_string(fmt.bits) + " bits)" + where);
  }
  if (fmt.sample_rate == 0) fail(ErrorCode::kMalformedFile, "zero sample rate" + where);

  const std::size_t bytes_per_sample = fmt.bits / 8;
  const std::size_t frame_bytes = bytes_per_sample * fmt.channels;
  const std::size_t count = data_size / frame_bytes;
  if (count == 0) fail(ErrorCode::kEmptyAudio, "zero-length audio" + where);

  Waveform w;
  w.sample_rate = static_cast<int>(fmt.sample_rate);
  w.samples.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    double acc = 0.0;
    for (std::size_t ch = 0; ch < fmt.channels; ++ch) {
      const unsigned char* p = data + i * frame_bytes + ch * bytes_per_sample;
      if (pcm16) {
        acc += static_cast<std::int16_t>(read_u16(p)) / 32768.0;
      } else {
        float f;
        std::uint32_t bits = read_u32(p);
        std::memcpy(&f, &bits, sizeof f);
        acc += f;
      }
    }
    w.samples[i] = acc / fmt.channels;
  }
  validate(w);
  return w;
}

void write_wav(const std::filesystem::path& path, const std::vector<double>& samples,
               int sample_rate, int channels, WavEncoding encoding) {
  require(channels >= 1 && channels <= 2, ErrorCode::kInvalidArgument, "channels must be 1 or 2");
  require(samples.size() % static_cast<std::size_t>(channels) == 0,
          ErrorCode::kInvalidArgument, "sample count not a multiple of channel count");
  require(sample_rate > 0, ErrorCode::kInvalidArgument, "sample rate must be positive");

  const bool pcm16 = encoding == WavEncoding::kPcm16;
  const std::uint16_t bits = pcm16 ? 16 : 32;
  const std::uint32_t data_bytes = static_cast<std::uint32_t>(samples.size() * (bits / 8));

  std::string out;
  out.reserve(44 + data_bytes);
  out += "RIFF";
  put_u32(out, 36 + data_bytes);
  out += "WAVEfmt ";
  put_u32(out, 16);
  put_u16(out, pcm16 ? kFormatPcm : kFormatFloat);
  put_u16(out, static_cast<std::uint16_t>(channels));
  put_u32(out, static_cast<std::uint32_t>(sample_rate));
  put_u32(out, static_cast<std::uint32_t>(sample_rate * channels * (bits / 8)));
  put_u16(out, static_cast<std::uint16_t>(channels * (bits / 8)));
  put_u16(out, bits);
  out += "data";
  put_u32(out, data_bytes);
  for (double s : samples) {
    if (pcm16) {
      double scaled = std::round(s * 32768.0);
      scaled = std::clamp(scaled, -32768.0, 32767.0);
      put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(scaled)));
    } else {
      float f = static_cast<float>(s);
      std::uint32_t u;
      std::memcpy(&u, &f, sizeof u);
      put_u32(out, u);
    }
  }

  std::ofstream file(path, std::ios::binary);
  if (!file) fail(ErrorCode::kUnreadableFile, "cannot write " + path.string());
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!file) fail(ErrorCode::kUnreadableFile, "write failed for " + path.string());
}

}  // namespace prosody::signal
