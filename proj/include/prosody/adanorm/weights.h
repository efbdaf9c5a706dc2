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

#ifndef PROSODY_ADANORM_WEIGHTS_H_
#define PROSODY_ADANORM_WEIGHTS_H_

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "prosody/adanorm/fft_block.h"

namespace prosody::adanorm {

using Shape = std::vector<std::size_t>;

// Visits every parameter array of a weight container in declaration order
// as f(name, data, shape).
template <class F>
void visit_tensors(Conv1dWeights& w, const std::string& prefix, F&& f) {
  f(prefix + ".weight", w.weight, Shape{w.out, w.in, w.kernel});
  f(prefix + ".bias", w.bias, Shape{w.out});
}

template <class F>
void visit_tensors(LinearWeights& w, const std::string& prefix, F&& f) {
  f(prefix + ".weight", w.weight, Shape{w.out, w.in});
  f(prefix + ".bias", w.bias, Shape{w.out});
}

template <class F>
void visit_tensors(AffinePair& w, const std::string& prefix, F&& f) {
  f(prefix + ".gamma", w.gamma, Shape{w.gamma.size()});
  f(prefix + ".beta", w.beta, Shape{w.beta.size()});
}

template <class F>
void visit_tensors(MultiHeadAttentionWeights& w, const std::string& prefix, F&& f) {
  visit_tensors(w.query, prefix + ".query", f);
  visit_tensors(w.key, prefix + ".key", f);
  visit_tensors(w.value, prefix + ".value", f);
  visit_tensors(w.output, prefix + ".output", f);
}

template <class F>
void visit_tensors(SpeakerAffineWeights& w, const std::string& prefix, F&& f) {
  visit_tensors(w.hidden, prefix + ".hidden", f);
  visit_tensors(w.gamma, prefix + ".gamma", f);
  visit_tensors(w.beta, prefix + ".beta", f);
}

template <class F>
void visit_tensors(TrackAffineWeights& w, const std::string& prefix, F&& f) {
  visit_tensors(w.hidden, prefix + ".hidden", f);
  visit_tensors(w.gamma, prefix + ".gamma", f);
  visit_tensors(w.beta, prefix + ".beta", f);
}

template <class F>
void visit_tensors(ConvNormWeights& w, const std::string& prefix, F&& f) {
  visit_tensors(w.ln, prefix + ".ln", f);
  visit_tensors(w.speaker, prefix + ".speaker", f);
  visit_tensors(w.pitch, prefix + ".pitch", f);
  visit_tensors(w.energy, prefix + ".energy", f);
}

template <class F>
void visit_tensors(AttentionNormWeights& w, const std::string& prefix, F&& f) {
  visit_tensors(w.ln, prefix + ".ln", f);
  visit_tensors(w.attention, prefix + ".attention", f);
  visit_tensors(w.gamma, prefix + ".gamma", f);
  visit_tensors(w.beta, prefix + ".beta", f);
}

template <class F>
void visit_tensors(NormStageWeights& w, const std::string& prefix, F&& f) {
  std::visit([&](auto& stage) { visit_tensors(stage, prefix, f); }, w);
}

template <class F>
void visit_tensors(FftBlockWeights& w, const std::string& prefix, F&& f) {
  visit_tensors(w.self_attention, prefix + ".self_attention", f);
  visit_tensors(w.norm1, prefix + ".norm1", f);
  visit_tensors(w.ffn_in, prefix + ".ffn_in", f);
  visit_tensors(w.ffn_out, prefix + ".ffn_out", f);
  visit_tensors(w.norm2, prefix + ".norm2", f);
}

template <class F>
void visit_tensors(VariancePredictorWeights& w, const std::string& prefix, F&& f) {
  visit_tensors(w.conv1, prefix + ".conv1", f);
  visit_tensors(w.ln1, prefix + ".ln1", f);
  visit_tensors(w.conv2, prefix + ".conv2", f);
  visit_tensors(w.ln2, prefix + ".ln2", f);
  visit_tensors(w.projection, prefix + ".projection", f);
}

inline constexpr double kInitBound = 0.1;

// Fills every parameter with seeded uniform draws in [-bound, bound].
template <class W>
void init_uniform(W& weights, std::uint64_t seed, double bound = kInitBound) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-bound, bound);
  visit_tensors(weights, "", [&](const std::string&, std::vector<double>& data, const Shape&) {
    for (double& v : data) v = dist(rng);
  });
}

template <class W>
void fill_constant(W& weights, double value) {
  visit_tensors(weights, "", [&](const std::string&, std::vector<double>& data, const Shape&) {
    std::fill(data.begin(), data.end(), value);
  });
}

struct NamedTensor {
  std::string name;
  Shape shape;
  std::vector<double> data;

  bool operator==(const NamedTensor&) const = default;
};

using WeightBundle = std::vector<NamedTensor>;

template <class W>
WeightBundle to_bundle(W weights, const std::string& prefix) {
  WeightBundle bundle;
  visit_tensors(weights, prefix,
                [&](const std::string& name, std::vector<double>& data, const Shape& shape) {
                  bundle.push_back(NamedTensor{name, shape, data});
                });
  return bundle;
}

// Throws kShapeMismatch when names, shapes or tensor count disagree.
void check_bundle_entry(const NamedTensor& entry, const std::string& name, const Shape& shape);

template <class W>
void from_bundle(W& weights, const std::string& prefix, const WeightBundle& bundle) {
  std::size_t index = 0;
  visit_tensors(weights, prefix,
                [&](const std::string& name, std::vector<double>& data, const Shape& shape) {
                  if (index >= bundle.size()) {
                    check_bundle_entry(NamedTensor{}, name, shape);
                  }
                  check_bundle_entry(bundle[index], name, shape);
                  data = bundle[index].data;
                  ++index;
                });
  if (index != bundle.size()) check_bundle_entry(bundle[index], "<end>", {});
}

// Binary layout (little-endian): magic "PKWB", u32 version, u32 tensor
// count, then per tensor u32 rank and u64 dims, then every tensor's f64
// values row-major in declaration order. The CSV manifest lists
// name,shape,offset,count per tensor, with offsets in values.
void write_bundle(const std::filesystem::path& binary, const std::filesystem::path& manifest,
                  const WeightBundle& bundle);
WeightBundle read_bundle(const std::filesystem::path& binary,
                         const std::filesystem::path& manifest);

std::string shape_string(const Shape& shape);

}  // namespace prosody::adanorm

#endif  // PROSODY_ADANORM_WEIGHTS_H_
