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

#ifndef PROSODY_ADANORM_LAYERS_H_
#define PROSODY_ADANORM_LAYERS_H_

#include <cstddef>
#include <vector>

#include "prosody/adanorm/tensor.h"
#include "prosody/matrix.h"

namespace prosody::adanorm {

inline constexpr double kNormEps = 1e-12;

// Weights shaped (out, in, kernel), row-major, plus a per-output bias.
struct Conv1dWeights {
  std::size_t out = 0;
  std::size_t in = 0;
  std::size_t kernel = 0;
  std::vector<double> weight;
  std::vector<double> bias;

  Conv1dWeights() = default;
  Conv1dWeights(std::size_t out_ch, std::size_t in_ch, std::size_t kernel_size)
      : out(out_ch), in(in_ch), kernel(kernel_size),
        weight(out_ch * in_ch * kernel_size, 0.0), bias(out_ch, 0.0) {}

  double& at(std::size_t o, std::size_t i, std::size_t k) {
    return weight[(o * in + i) * kernel + k];
  }
  double at(std::size_t o, std::size_t i, std::size_t k) const {
    return weight[(o * in + i) * kernel + k];
  }
};

// y = W x + b with W shaped (out, in).
struct LinearWeights {
  std::size_t out = 0;
  std::size_t in = 0;
  std::vector<double> weight;
  std::vector<double> bias;

  LinearWeights() = default;
  LinearWeights(std::size_t out_dim, std::size_t in_dim)
      : out(out_dim), in(in_dim), weight(out_dim * in_dim, 0.0), bias(out_dim, 0.0) {}
};

enum class AttentionDivisor { kSqrtDk, kDk };

struct MultiHeadAttentionWeights {
  std::size_t heads = 1;
  LinearWeights query;
  LinearWeights key;
  LinearWeights value;
  LinearWeights output;

  MultiHeadAttentionWeights() = default;
  MultiHeadAttentionWeights(std::size_t dim, std::size_t num_heads)
      : heads(num_heads), query(dim, dim), key(dim, dim), value(dim, dim), output(dim, dim) {}
};

// Pure normalization over channels for each (frame, batch) element.
Tensor3 normalize_over_channels(const Tensor3& x, double eps = kNormEps);

// normalize_over_channels followed by gamma * x + beta per channel.
Tensor3 layer_norm(const Tensor3& x, const AffinePair& affine, double eps = kNormEps);

// Pure normalization over frames for each (channel, batch) element.
Tensor3 instance_norm(const Tensor3& x, double eps = kNormEps);

// Same-length cross-correlation along frames with zero padding; x is
// frames x in. Throws kShapeMismatch when x.cols() != w.in.
Matrix conv1d(const Matrix& x, const Conv1dWeights& w);
Tensor3 conv1d(const Tensor3& x, const Conv1dWeights& w);

Matrix linear(const Matrix& x, const LinearWeights& w);

void relu_inplace(Matrix& x);
void relu_inplace(Tensor3& x);

// Row-wise softmax with max subtraction.
Matrix softmax_rows(const Matrix& logits);

double attention_divisor_value(AttentionDivisor divisor, std::size_t key_dim);

// softmax(Q K^T / divisor) V. Throws kShapeMismatch on inconsistent dims.
Matrix scaled_attention(const Matrix& q, const Matrix& k, const Matrix& v,
                        AttentionDivisor divisor = AttentionDivisor::kSqrtDk);

// Attention probabilities softmax(Q K^T / divisor) on their own.
Matrix attention_weights(const Matrix& q, const Matrix& k,
                         AttentionDivisor divisor = AttentionDivisor::kSqrtDk);

// Projects x to Q, K, V, runs per-head attention on equal channel splits,
// concatenates and applies the output projection.
Matrix multi_head_attention(const Matrix& x, const MultiHeadAttentionWeights& w,
                            AttentionDivisor divisor = AttentionDivisor::kSqrtDk);

}  // namespace prosody::adanorm

#endif  // PROSODY_ADANORM_LAYERS_H_
