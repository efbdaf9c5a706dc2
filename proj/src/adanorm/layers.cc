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

#include "prosody/adanorm/layers.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "prosody/error.h"

namespace prosody::adanorm {

Tensor3 normalize_over_channels(const Tensor3& x, double eps) {
  Tensor3 out(x.frames(), x.channels(), x.batch());
  const auto n = static_cast<double>(x.channels());
  for (std::size_t b = 0; b < x.batch(); ++b) {
    for (std::size_t t = 0; t < x.frames(); ++t) {
      double mean = 0.0;
      for (std::size_t c = 0; c < x.channels(); ++c) mean += x(t, c, b);
      mean /= n;
      double var = 0.0;
      for (std::size_t c = 0; c < x.channels(); ++c) {
        const double d = x(t, c, b) - mean;
        var += d * d;
      }
      var /= n;
      const double inv = 1.0 / std::sqrt(var + eps);
      for (std::size_t c = 0; c < x.channels(); ++c) out(t, c, b) = (x(t, c, b) - mean) * inv;
    }
  }
  return out;
}

Tensor3 layer_norm(const Tensor3& x, const AffinePair& affine, double eps) {
  require(affine.gamma.size() == x.channels() && affine.beta.size() == x.channels(),
          ErrorCode::kShapeMismatch, "layer norm affine width does not match channels");
  Tensor3 out = normalize_over_channels(x, eps);
  for (std::size_t b = 0; b < x.batch(); ++b) {
    for (std::size_t t = 0; t < x.frames(); ++t) {
      for (std::size_t c = 0; c < x.channels(); ++c) {
        out(t, c, b) = affine.gamma[c] * out(t, c, b) + affine.beta[c];
      }
    }
  }
  return out;
}

Tensor3 instance_norm(const Tensor3& x, double eps) {
  require(x.frames() >= 1, ErrorCode::kEmptyInput, "instance norm needs at least one frame");
  Tensor3 out(x.frames(), x.channels(), x.batch());
  const auto n = static_cast<double>(x.frames());
  for (std::size_t b = 0; b < x.batch(); ++b) {
    for (std::size_t c = 0; c < x.channels(); ++c) {
      double mean = 0.0;
      for (std::size_t t = 0; t < x.frames(); ++t) mean += x(t, c, b);
      mean /= n;
      double var = 0.0;
      for (std::size_t t = 0; t < x.frames(); ++t) {
        const double d = x(t, c, b) - mean;
        var += d * d;
      }
      var /= n;
      const double inv = 1.0 / std::sqrt(var + eps);
      for (std::size_t t = 0; t < x.frames(); ++t) out(t, c, b) = (x(t, c, b) - mean) * inv;
    }
  }
  return out;
}

Matrix conv1d(const Matrix& x, const Conv1dWeights& w) {
  require(x.cols() == w.in, ErrorCode::kShapeMismatch,
          "conv1d expects " + std::to_string(w.in) + " input channels, got " +
              std::to_string(x.cols()));
  require(w.kernel >= 1 && w.weight.size() == w.out * w.in * w.kernel &&
              w.bias.size() == w.out,
          ErrorCode::kShapeMismatch, "conv1d weights are inconsistently shaped");
  const auto frames = static_cast<std::ptrdiff_t>(x.rows());
  const auto pad = static_cast<std::ptrdiff_t>((w.kernel - 1) / 2);
  Matrix y(x.rows(), w.out);
  for (std::ptrdiff_t t = 0; t < frames; ++t) {
    auto out = y.row(static_cast<std::size_t>(t));
    for (std::size_t o = 0; o < w.out; ++o) out[o] = w.bias[o];
    for (std::size_t k = 0; k < w.kernel; ++k) {
      const std::ptrdiff_t src = t + static_cast<std::ptrdiff_t>(k) - pad;
      if (src < 0 || src >= frames) continue;
      auto in = x.row(static_cast<std::size_t>(src));
      for (std::size_t o = 0; o < w.out; ++o) {
        const double* wo = &w.weight[o * w.in * w.kernel + k];
        double acc = 0.0;
        for (std::size_t i = 0; i < w.in; ++i) acc += wo[i * w.kernel] * in[i];
        out[o] += acc;
      }
    }
  }
  return y;
}

Tensor3 conv1d(const Tensor3& x, const Conv1dWeights& w) {
  Tensor3 y(x.frames(), w.out, x.batch());
  for (std::size_t b = 0; b < x.batch(); ++b) y.set_slice(b, conv1d(x.slice(b), w));
  return y;
}

Matrix linear(const Matrix& x, const LinearWeights& w) {
  require(x.cols() == w.in, ErrorCode::kShapeMismatch,
          "linear layer expects width " + std::to_string(w.in) + ", got " +
              std::to_string(x.cols()));
  require(w.weight.size() == w.out * w.in && w.bias.size() == w.out, ErrorCode::kShapeMismatch,
          "linear weights are inconsistently shaped");
  Matrix y(x.rows(), w.out);
  for (std::size_t r = 0; r < x.rows(); ++r) {
    auto in = x.row(r);
    for (std::size_t o = 0; o < w.out; ++o) {
      const double* wo = &w.weight[o * w.in];
      double acc = w.bias[o];
      for (std::size_t i = 0; i < w.in; ++i) acc += wo[i] * in[i];
      y(r, o) = acc;
    }
  }
  return y;
}

void relu_inplace(Matrix& x) {
  for (double& v : x.data()) v = std::max(v, 0.0);
}

void relu_inplace(Tensor3& x) {
  for (double& v : x.data()) v = std::max(v, 0.0);
}

Matrix softmax_rows(const Matrix& logits) {
  Matrix p(logits.rows(), logits.cols());
  for (std::size_t r = 0; r < logits.rows(); ++r) {
    auto in = logits.row(r);
    auto out = p.row(r);
    const double top = *std::max_element(in.begin(), in.end());
    double sum = 0.0;
    for (std::size_t c = 0; c < in.size(); ++c) {
      out[c] = std::exp(in[c] - top);
      sum += out[c];
    }
    for (double& v : out) v /= sum;
  }
  return p;
}

double attention_divisor_value(AttentionDivisor divisor, std::size_t key_dim) {
  const auto dk = static_cast<double>(key_dim);
  return divisor == AttentionDivisor::kDk ? dk : std::sqrt(dk);
}

Matrix attention_weights(const Matrix& q, const Matrix& k, AttentionDivisor divisor) {
  require(q.cols() == k.cols(), ErrorCode::kShapeMismatch,
          "query and key widths differ");
  require(k.rows() >= 1 && q.cols() >= 1, ErrorCode::kShapeMismatch,
          "attention needs at least one key and a nonzero key width");
  const double scale = 1.0 / attention_divisor_value(divisor, q.cols());
  Matrix logits(q.rows(), k.rows());
  for (std::size_t i = 0; i < q.rows(); ++i) {
    auto qi = q.row(i);
    for (std::size_t j = 0; j < k.rows(); ++j) {
      auto kj = k.row(j);
      double acc = 0.0;
      for (std::size_t d = 0; d < qi.size(); ++d) acc += qi[d] * kj[d];
      logits(i, j) = acc * scale;
    }
  }
  return softmax_rows(logits);
}

Matrix scaled_attention(const Matrix& q, const Matrix& k, const Matrix& v,
                        AttentionDivisor divisor) {
  require(k.rows() == v.rows(), ErrorCode::kShapeMismatch, "key and value counts differ");
  const Matrix p = attention_weights(q, k, divisor);
  Matrix out(q.rows(), v.cols());
  for (std::size_t i = 0; i < q.rows(); ++i) {
    auto pi = p.row(i);
    auto oi = out.row(i);
    for (std::size_t j = 0; j < v.rows(); ++j) {
      auto vj = v.row(j);
      for (std::size_t d = 0; d < v.cols(); ++d) oi[d] += pi[j] * vj[d];
    }
  }
  return out;
}

namespace {

Matrix columns(const Matrix& m, std::size_t begin, std::size_t count) {
  Matrix out(m.rows(), count);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < count; ++c) out(r, c) = m(r, begin + c);
  }
  return out;
}

}  // namespace

Matrix multi_head_attention(const Matrix& x, const MultiHeadAttentionWeights& w,
                            AttentionDivisor divisor) {
  const std::size_t dim = w.query.out;
  require(w.heads >= 1 && dim % w.heads == 0, ErrorCode::kShapeMismatch,
          "attention width " + std::to_string(dim) + " not divisible by " +
              std::to_string(w.heads) + " heads");
  require(w.key.out == dim && w.value.out == dim && w.output.in == dim,
          ErrorCode::kShapeMismatch, "attention projections disagree on width");
  const Matrix q = linear(x, w.query);
  const Matrix k = linear(x, w.key);
  const Matrix v = linear(x, w.value);
  const std::size_t head_dim = dim / w.heads;
  Matrix concat(x.rows(), dim);
  for (std::size_t h = 0; h < w.heads; ++h) {
    const std::size_t off = h * head_dim;
    const Matrix head = scaled_attention(columns(q, off, head_dim), columns(k, off, head_dim),
                                         columns(v, off, head_dim), divisor);
    for (std::size_t r = 0; r < x.rows(); ++r) {
      for (std::size_t c = 0; c < head_dim; ++c) concat(r, off + c) = head(r, c);
    }
  }
  return linear(concat, w.output);
}

}  // namespace prosody::adanorm
