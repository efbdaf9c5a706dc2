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

#include "prosody/adanorm/fft_block.h"

#include <string>

#include "prosody/error.h"

namespace prosody::adanorm {
namespace {

NormStageWeights make_stage(const NormKernelConfig& norm_cfg, NormKind kind) {
  if (kind == NormKind::kConv) return ConvNormWeights(norm_cfg);
  return AttentionNormWeights(norm_cfg);
}

void add_inplace(Tensor3& a, const Tensor3& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a.data()[i] += b.data()[i];
}

}  // namespace

void validate(const FftBlockConfig& cfg) {
  require(cfg.hidden > 0 && cfg.heads > 0 && cfg.hidden % cfg.heads == 0,
          ErrorCode::kInvalidArgument,
          "FFT block hidden width " + std::to_string(cfg.hidden) + " not divisible by " +
              std::to_string(cfg.heads) + " heads");
  require(cfg.conv_filter > 0 && cfg.conv_kernel > 0, ErrorCode::kInvalidArgument,
          "FFT block conv sizes must be positive");
}

FftBlockWeights::FftBlockWeights(const FftBlockConfig& cfg, const NormKernelConfig& norm_cfg,
                                 NormKind kind)
    : self_attention((validate(cfg), cfg.hidden), cfg.heads),
      norm1(make_stage(norm_cfg, kind)),
      ffn_in(cfg.conv_filter, cfg.hidden, cfg.conv_kernel),
      ffn_out(cfg.hidden, cfg.conv_filter, cfg.conv_kernel),
      norm2(make_stage(norm_cfg, kind)) {}

Tensor3 apply_norm_stage(const Tensor3& x, const Conditioning& cond,
                         const NormStageWeights& weights, MixParam rho,
                         const NormKernelConfig& norm_cfg) {
  if (const auto* conv = std::get_if<ConvNormWeights>(&weights)) {
    return conv_norm_stage(x, cond, *conv, rho, norm_cfg);
  }
  return attention_adaptive_norm(x, cond, std::get<AttentionNormWeights>(weights), rho,
                                 norm_cfg);
}

Tensor3 fft_block_forward(const Tensor3& x, const FftBlockConfig& cfg,
                          const NormKernelConfig& norm_cfg, const Conditioning& cond,
                          const FftBlockWeights& weights, MixParam rho) {
  validate(cfg);
  require(x.channels() == cfg.hidden, ErrorCode::kShapeMismatch,
          "FFT block input width " + std::to_string(x.channels()) + " != hidden " +
              std::to_string(cfg.hidden));
  require(norm_cfg.channels == cfg.hidden, ErrorCode::kInvalidArgument,
          "norm channel width must equal the block hidden width");
  require(weights.self_attention.heads == cfg.heads, ErrorCode::kInvalidArgument,
          "self-attention head count disagrees with config");

  Tensor3 residual = x;
  for (std::size_t b = 0; b < x.batch(); ++b) {
    const Matrix attended =
        multi_head_attention(x.slice(b), weights.self_attention, cfg.attention_divisor);
    Matrix r = residual.slice(b);
    for (std::size_t i = 0; i < r.data().size(); ++i) r.data()[i] += attended.data()[i];
    residual.set_slice(b, r);
  }
  const Tensor3 normed = apply_norm_stage(residual, cond, weights.norm1, rho, norm_cfg);

  Tensor3 hidden = conv1d(normed, weights.ffn_in);
  relu_inplace(hidden);
  Tensor3 ffn = conv1d(hidden, weights.ffn_out);
  add_inplace(ffn, normed);
  return apply_norm_stage(ffn, cond, weights.norm2, rho, norm_cfg);
}

VariancePredictorWeights::VariancePredictorWeights(const VariancePredictorConfig& cfg)
    : conv1(cfg.filter, cfg.hidden, cfg.kernel),
      ln1{std::vector<double>(cfg.filter, 1.0), std::vector<double>(cfg.filter, 0.0)},
      conv2(cfg.filter, cfg.filter, cfg.kernel),
      ln2{std::vector<double>(cfg.filter, 1.0), std::vector<double>(cfg.filter, 0.0)},
      projection(1, cfg.filter) {}

Matrix variance_predictor_forward(const Tensor3& h, const VariancePredictorWeights& weights,
                                  const VariancePredictorConfig& cfg,
                                  VariancePredictorTrace* trace) {
  require(h.channels() == weights.conv1.in, ErrorCode::kShapeMismatch,
          "variance predictor expects width " + std::to_string(weights.conv1.in) + ", got " +
              std::to_string(h.channels()));
  Tensor3 a = conv1d(h, weights.conv1);
  relu_inplace(a);
  if (trace) trace->relu1 = a;
  a = layer_norm(a, weights.ln1, cfg.eps);

  Tensor3 b = conv1d(a, weights.conv2);
  relu_inplace(b);
  if (trace) trace->relu2 = b;
  b = layer_norm(b, weights.ln2, cfg.eps);

  Matrix out(h.batch(), h.frames());
  for (std::size_t n = 0; n < h.batch(); ++n) {
    const Matrix projected = linear(b.slice(n), weights.projection);
    for (std::size_t t = 0; t < h.frames(); ++t) out(n, t) = projected(t, 0);
  }
  return out;
}

}  // namespace prosody::adanorm
