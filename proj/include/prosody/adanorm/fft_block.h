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

#ifndef PROSODY_ADANORM_FFT_BLOCK_H_
#define PROSODY_ADANORM_FFT_BLOCK_H_

#include <variant>

#include "prosody/adanorm/adaptive_norm.h"

namespace prosody::adanorm {

// Feed-forward transformer block widths.
struct FftBlockConfig {
  std::size_t hidden = 256;
  std::size_t heads = 2;
  std::size_t conv_filter = 1024;
  std::size_t conv_kernel = 9;
  double dropout = 0.2;  // recorded only; inference runs without dropout
  AttentionDivisor attention_divisor = AttentionDivisor::kSqrtDk;
};

// Throws kInvalidArgument unless hidden is a positive multiple of heads.
void validate(const FftBlockConfig& cfg);

enum class NormKind { kConv, kAttention };

using NormStageWeights = std::variant<ConvNormWeights, AttentionNormWeights>;

struct FftBlockWeights {
  MultiHeadAttentionWeights self_attention;
  NormStageWeights norm1;
  Conv1dWeights ffn_in;
  Conv1dWeights ffn_out;
  NormStageWeights norm2;

  FftBlockWeights() = default;
  FftBlockWeights(const FftBlockConfig& cfg, const NormKernelConfig& norm_cfg, NormKind kind);
};

Tensor3 apply_norm_stage(const Tensor3& x, const Conditioning& cond,
                         const NormStageWeights& weights, MixParam rho,
                         const NormKernelConfig& norm_cfg);

// self-attention + residual + adaptive norm, then
// conv(conv_filter) -> ReLU -> conv(hidden) + residual + adaptive norm.
Tensor3 fft_block_forward(const Tensor3& x, const FftBlockConfig& cfg,
                          const NormKernelConfig& norm_cfg, const Conditioning& cond,
                          const FftBlockWeights& weights, MixParam rho);

struct VariancePredictorConfig {
  std::size_t hidden = 256;
  std::size_t filter = 256;
  std::size_t kernel = 3;
  double dropout = 0.5;  // recorded only
  double eps = kNormEps;
};

struct VariancePredictorWeights {
  Conv1dWeights conv1;
  AffinePair ln1;
  Conv1dWeights conv2;
  AffinePair ln2;
  LinearWeights projection;

  VariancePredictorWeights() = default;
  explicit VariancePredictorWeights(const VariancePredictorConfig& cfg);
};

// Post-ReLU activations of both conv layers, for inspection.
struct VariancePredictorTrace {
  Tensor3 relu1;
  Tensor3 relu2;
};

// [conv -> ReLU -> layer norm] x 2 -> linear to one value per frame.
// Returns batch x frames. Throws kShapeMismatch when h is not hidden wide.
Matrix variance_predictor_forward(const Tensor3& h, const VariancePredictorWeights& weights,
                                  const VariancePredictorConfig& cfg = {},
                                  VariancePredictorTrace* trace = nullptr);

}  // namespace prosody::adanorm

#endif  // PROSODY_ADANORM_FFT_BLOCK_H_
