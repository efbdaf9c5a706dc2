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

#include "prosody/adanorm/weights.h"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "prosody/error.h"

namespace prosody::adanorm {
namespace {

constexpr char kMagic[4] = {'P', 'K', 'W', 'B'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put(std::ostream& out, T value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <class T>
T get(std::istream& in, const std::string& what) {
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T))) {
    fail(ErrorCode::kMalformedFile, "weight bundle truncated while reading " + what);
  }
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

std::size_t element_count(const Shape& shape) {
  std::size_t n = 1;
  for (std::size_t d : shape) n *= d;
  return n;
}

Shape parse_shape(const std::string& text) {
  Shape shape;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, 'x')) {
    try {
      shape.push_back(static_cast<std::size_t>(std::stoull(part)));
    } catch (const std::exception&) {
      fail(ErrorCode::kParseError, "bad shape '" + text + "' in weight manifest");
    }
  }
  return shape;
}

}  // namespace

std::string shape_string(const Shape& shape) {
  std::string out;
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) out += 'x';
    out += std::to_string(shape[i]);
  }
  return out;
}

void check_bundle_entry(const NamedTensor& entry, const std::string& name, const Shape& shape) {
  if (entry.name != name || entry.shape != shape) {
    fail(ErrorCode::kShapeMismatch, "weight bundle entry '" + entry.name + "' [" +
                                        shape_string(entry.shape) + "] where '" + name + "' [" +
                                        shape_string(shape) + "] was expected");
  }
}

void write_bundle(const std::filesystem::path& binary, const std::filesystem::path& manifest,
                  const WeightBundle& bundle) {
  std::ofstream out(binary, std::ios::binary);
  if (!out) fail(ErrorCode::kUnreadableFile, "cannot write " + binary.string());
  out.write(kMagic, 4);
  put<std::uint32_t>(out, kVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(bundle.size()));
  for (const auto& t : bundle) {
    require(element_count(t.shape) == t.data.size(), ErrorCode::kShapeMismatch,
            "tensor " + t.name + " data does not match its shape");
    put<std::uint32_t>(out, static_cast<std::uint32_t>(t.shape.size()));
    for (std::size_t d : t.shape) put<std::uint64_t>(out, d);
  }
  for (const auto& t : bundle) {
    for (double v : t.data) put<double>(out, v);
  }
  if (!out) fail(ErrorCode::kUnreadableFile, "write failed for " + binary.string());

  std::ofstream csv(manifest);
  if (!csv) fail(ErrorCode::kUnreadableFile, "cannot write " + manifest.string());
  csv << "name,shape,offset,count\n";
  std::size_t offset = 0;
  for (const auto& t : bundle) {
    csv << t.name << ',' << shape_string(t.shape) << ',' << offset << ',' << t.data.size()
        << '\n';
    offset += t.data.size();
  }
}

WeightBundle read_bundle(const std::filesystem::path& binary,
                         const std::filesystem::path& manifest) {
  std::ifstream in(binary, std::ios::binary);
  if (!in) fail(ErrorCode::kUnreadableFile, "cannot open " + binary.string());
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
    fail(ErrorCode::kMalformedFile, binary.string() + " is not a weight bundle");
  }
  const auto version = get<std::uint32_t>(in, "version");
  if (version != kVersion) {
    fail(ErrorCode::kUnsupportedCodec, "weight bundle version " + std::to_string(version));
  }
  const auto count = get<std::uint32_t>(in, "tensor count");
  WeightBundle bundle(count);
  for (auto& t : bundle) {
    const auto rank = get<std::uint32_t>(in, "rank");
    for (std::uint32_t i = 0; i < rank; ++i) {
      t.shape.push_back(static_cast<std::size_t>(get<std::uint64_t>(in, "dims")));
    }
  }
  for (auto& t : bundle) {
    t.data.resize(element_count(t.shape));
    for (double& v : t.data) v = get<double>(in, "values");
  }

  std::ifstream csv(manifest);
  if (!csv) fail(ErrorCode::kUnreadableFile, "cannot open " + manifest.string());
  std::string line;
  std::getline(csv, line);
  std::size_t index = 0, offset = 0;
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string name, shape, off, n;
    std::getline(ss, name, ',');
    std::getline(ss, shape, ',');
    std::getline(ss, off, ',');
    std::getline(ss, n, ',');
    if (index >= bundle.size()) {
      fail(ErrorCode::kShapeMismatch, "manifest lists more tensors than the bundle holds");
    }
    auto& t = bundle[index];
    if (parse_shape(shape) != t.shape || off != std::to_string(offset) ||
        n != std::to_string(t.data.size())) {
      fail(ErrorCode::kShapeMismatch, "manifest entry '" + name + "' disagrees with the bundle");
    }
    t.name = name;
    offset += t.data.size();
    ++index;
  }
  if (index != bundle.size()) {
    fail(ErrorCode::kShapeMismatch, "manifest lists fewer tensors than the bundle holds");
  }
  return bundle;
}

}  // namespace prosody::adanorm
