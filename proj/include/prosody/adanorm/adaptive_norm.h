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

#ifndef PROSODY_ADANORM_ADAPTIVE_NORM_H_
#define PROSODY_ADANORM_ADAPTIVE_NORM_H_

#include <span>
#include <utility>
#include <vector>

#include "prosody/adanorm/layers.h"
#include "prosody/adanorm/tensor.h"
#include "prosody/matrix.h"

namespace prosody::adanorm {

inline constexpr double kInitialRho = 0.7;

// Widths of the conditioning networks that produce adaptive affines.
struct NormKernelConfig {
  std::size_t channels = 256;
  std::size_t kernel_size = 9;
  std::size_t initial_filter = 512;
  std::size_t affine_filter = 256;
  std::size_t attn_heads = 6;
  std::size_t concat_dim = 258;
  std::size_t speaker_dim = 256;
  double eps = kNormEps;
  AttentionDivisor attention_divisor = AttentionDivisor::kSqrtDk;
};

// Throws kInvalidArgument for nonpositive widths, concat_dim != speaker_dim + 2,
// affine_filter != channels, or concat_dim not divisible by attn_heads.
void validate(const NormKernelConfig& cfg);

// Per-batch conditioning inputs: speaker embedding rows (B x speaker_dim)
// and pitch / energy tracks (B x T).
struct Conditioning {
  Matrix speaker;
  Matrix pitch;
  Matrix energy;

  std::size_t batch() const { return speaker.rows(); }
};

// speaker (as a one-frame sequence) -> conv to initial_filter -> ReLU ->
// separate convs to gamma and beta.
struct SpeakerAffineWeights {
  Conv1dWeights hidden;
  Conv1dWeights gamma;
  Conv1dWeights beta;

  SpeakerAffineWeights() = default;
  explicit SpeakerAffineWeights(const NormKernelConfig& cfg)
      : hidden(cfg.initial_filter, cfg.speaker_dim, cfg.kernel_size),
        gamma(cfg.affine_filter, cfg.initial_filter, cfg.kernel_size),
        beta(cfg.affine_filter, cfg.initial_filter, cfg.kernel_size) {}
};

// Scalar track (one channel over frames) -> conv to initial_filter -> ReLU ->
// separate convs to per-frame gamma and beta.
struct TrackAffineWeights {
  Conv1dWeights hidden;
  Conv1dWeights gamma;
  Conv1dWeights beta;

  TrackAffineWeights() = default;
  explicit TrackAffineWeights(const NormKernelConfig& cfg)
      : hidden(cfg.initial_filter, 1, cfg.kernel_size),
        gamma(cfg.affine_filter, cfg.initial_filter, cfg.kernel_size),
        beta(cfg.affine_filter, cfg.initial_filter, cfg.kernel_size) {}
};

// Convolution-based adaptive norm: layer-norm affine, speaker affine network
// and the pitch / energy affine networks.
struct ConvNormWeights {
  AffinePair ln;
  SpeakerAffineWeights speaker;
  TrackAffineWeights pitch;
  TrackAffineWeights energy;
  bool modulate_pitch_energy = false;  // apply the nested per-frame affine after mixing

  ConvNormWeights() = default;
  explicit ConvNormWeights(const NormKernelConfig& cfg)
      : ln{std::vector<double>(cfg.channels, 1.0), std::vector<double>(cfg.channels, 0.0)},
        speaker(cfg), pitch(cfg), energy(cfg) {}
};

// Attention-based adaptive norm over the concatenated conditioning features.
struct AttentionNormWeights {
  AffinePair ln;
  MultiHeadAttentionWeights attention;
  Conv1dWeights gamma;
  Conv1dWeights beta;

  AttentionNormWeights() = default;
  explicit AttentionNormWeights(const NormKernelConfig& cfg)
      : ln{std::vector<double>(cfg.channels, 1.0), std::vector<double>(cfg.channels, 0.0)},
        attention(cfg.concat_dim, cfg.attn_heads),
        gamma(cfg.channels, cfg.concat_dim, cfg.kernel_size),
        beta(cfg.channels, cfg.concat_dim, cfg.kernel_size) {}
};

// gamma_SE, beta_SE from one speaker embedding. Throws kShapeMismatch when
// the embedding width differs from the network input width.
AffinePair affine_from_speaker(std::span<const double> speaker,
                               const SpeakerAffineWeights& weights);

// Per-frame gamma and beta (each frames x channels) from a scalar track.
// Throws kEmptyInput for an empty track.
std::pair<Matrix, Matrix> affine_from_track(std::span<const double> track,
                                            const TrackAffineWeights& weights);

// affine_from_track applied to each row of `tracks` (B x T).
AffineField track_field(const Matrix& tracks, const TrackAffineWeights& weights);

// Repeats each batch element's affine over `frames` frames.
AffineField broadcast_over_frames(std::span<const AffinePair> per_batch, std::size_t frames);

// y = rho * (gamma_LN * x_LN + beta_LN) + (1 - rho) * (gamma_SE * x_IN + beta_SE)
// with one speaker affine per batch element.
Tensor3 conv_adaptive_norm(const Tensor3& x, const AffinePair& ln,
                           std::span<const AffinePair> speaker, MixParam rho,
                           double eps = kNormEps);

// Same mix with per-frame conditioning affines (used by the attention path).
Tensor3 mix_adaptive_norm(const Tensor3& x, const AffinePair& ln, const AffineField& cond,
                          MixParam rho, double eps = kNormEps);

// gamma_energy * (gamma_pitch * y + beta_pitch) + beta_energy, elementwise.
Tensor3 pitch_energy_modulate(const Tensor3& y, const AffineField& pitch,
                              const AffineField& energy);

// Concatenated [speaker, pitch, energy] features for batch element b
// (frames x (speaker_dim + 2)).
Matrix concat_conditioning(const Conditioning& cond, std::size_t b);

// gamma_attention, beta_attention fields from the conditioning inputs.
AffineField attention_affine(const Conditioning& cond, const AttentionNormWeights& weights,
                             const NormKernelConfig& cfg);

Tensor3 attention_adaptive_norm(const Tensor3& x, const Conditioning& cond,
                                const AttentionNormWeights& weights, MixParam rho,
                                const NormKernelConfig& cfg);

// Conv path applied end to end: speaker affine, mix, and (when enabled) the
// pitch/energy modulation.
Tensor3 conv_norm_stage(const Tensor3& x, const Conditioning& cond,
                        const ConvNormWeights& weights, MixParam rho,
                        const NormKernelConfig& cfg);

// Elementwise scaling of pitch and energy tracks. Throws kInvalidArgument
// for nonpositive factors and kShapeMismatch for tracks of unequal length.
std::pair<std::vector<double>, std::vector<double>> scale_tracks(
    std::span<const double> pitch, std::span<const double> energy, double alpha_f0,
    double alpha_energy);

}  // namespace prosody::adanorm

#endif  // PROSODY_ADANORM_ADAPTIVE_NORM_H_
