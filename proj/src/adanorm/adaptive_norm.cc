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

#include "prosody/adanorm/adaptive_norm.h"

#include <string>

#include "prosody/error.h"

namespace prosody::adanorm {

void validate(const NormKernelConfig& cfg) {
  require(cfg.channels > 0 && cfg.kernel_size > 0 && cfg.initial_filter > 0 &&
              cfg.affine_filter > 0 && cfg.attn_heads > 0 && cfg.speaker_dim > 0,
          ErrorCode::kInvalidArgument, "norm kernel widths must be positive");
  require(cfg.concat_dim == cfg.speaker_dim + 2, ErrorCode::kInvalidArgument,
          "concat_dim must equal speaker_dim + 2");
  require(cfg.affine_filter == cfg.channels, ErrorCode::kInvalidArgument,
          "affine filter width must match the modulated channel count");
  require(cfg.concat_dim % cfg.attn_heads == 0, ErrorCode::kInvalidArgument,
          "concat_dim must be divisible by the attention head count");
}

AffinePair affine_from_speaker(std::span<const double> speaker,
                               const SpeakerAffineWeights& weights) {
  require(speaker.size() == weights.hidden.in, ErrorCode::kShapeMismatch,
          "speaker embedding has width " + std::to_string(speaker.size()) + ", expected " +
              std::to_string(weights.hidden.in));
  Matrix se(1, speaker.size());
  std::copy(speaker.begin(), speaker.end(), se.data().begin());
  Matrix hidden = conv1d(se, weights.hidden);
  relu_inplace(hidden);
  const Matrix gamma = conv1d(hidden, weights.gamma);
  const Matrix beta = conv1d(hidden, weights.beta);
  return AffinePair{gamma.data(), beta.data()};
}

std::pair<Matrix, Matrix> affine_from_track(std::span<const double> track,
                                            const TrackAffineWeights& weights) {
  require(!track.empty(), ErrorCode::kEmptyInput, "affine_from_track needs a nonempty track");
  Matrix x(track.size(), 1);
  std::copy(track.begin(), track.end(), x.data().begin());
  Matrix hidden = conv1d(x, weights.hidden);
  relu_inplace(hidden);
  return {conv1d(hidden, weights.gamma), conv1d(hidden, weights.beta)};
}

AffineField track_field(const Matrix& tracks, const TrackAffineWeights& weights) {
  const std::size_t frames = tracks.cols();
  const std::size_t channels = weights.gamma.out;
  AffineField field{Tensor3(frames, channels, tracks.rows()),
                    Tensor3(frames, channels, tracks.rows())};
  for (std::size_t b = 0; b < tracks.rows(); ++b) {
    auto [gamma, beta] = affine_from_track(tracks.row(b), weights);
    field.gamma.set_slice(b, gamma);
    field.beta.set_slice(b, beta);
  }
  return field;
}

AffineField broadcast_over_frames(std::span<const AffinePair> per_batch, std::size_t frames) {
  require(!per_batch.empty(), ErrorCode::kEmptyInput, "no affines to broadcast");
  const std::size_t channels = per_batch.front().channels();
  AffineField field{Tensor3(frames, channels, per_batch.size()),
                    Tensor3(frames, channels, per_batch.size())};
  for (std::size_t b = 0; b < per_batch.size(); ++b) {
    require(per_batch[b].gamma.size() == channels && per_batch[b].beta.size() == channels,
            ErrorCode::kShapeMismatch, "per-batch affines differ in width");
    for (std::size_t t = 0; t < frames; ++t) {
      for (std::size_t c = 0; c < channels; ++c) {
        field.gamma(t, c, b) = per_batch[b].gamma[c];
        field.beta(t, c, b) = per_batch[b].beta[c];
      }
    }
  }
  return field;
}

Tensor3 mix_adaptive_norm(const Tensor3& x, const AffinePair& ln, const AffineField& cond,
                          MixParam rho, double eps) {
  require(ln.gamma.size() == x.channels() && ln.beta.size() == x.channels(),
          ErrorCode::kShapeMismatch, "layer-norm affine width does not match channels");
  require(cond.gamma.same_shape(x) && cond.beta.same_shape(x), ErrorCode::kShapeMismatch,
          "conditioning affine field does not match input shape");
  const Tensor3 x_ln = normalize_over_channels(x, eps);
  const Tensor3 x_in = instance_norm(x, eps);
  const double r = rho.value();
  const double s = 1.0 - r;
  Tensor3 y(x.frames(), x.channels(), x.batch());
  for (std::size_t b = 0; b < x.batch(); ++b) {
    for (std::size_t t = 0; t < x.frames(); ++t) {
      for (std::size_t c = 0; c < x.channels(); ++c) {
        const double ln_branch = ln.gamma[c] * x_ln(t, c, b) + ln.beta[c];
        const double in_branch = cond.gamma(t, c, b) * x_in(t, c, b) + cond.beta(t, c, b);
        y(t, c, b) = r * ln_branch + s * in_branch;
      }
    }
  }
  return y;
}

Tensor3 conv_adaptive_norm(const Tensor3& x, const AffinePair& ln,
                           std::span<const AffinePair> speaker, MixParam rho, double eps) {
  require(speaker.size() == x.batch(), ErrorCode::kShapeMismatch,
          "need one speaker affine per batch element");
  return mix_adaptive_norm(x, ln, broadcast_over_frames(speaker, x.frames()), rho, eps);
}

Tensor3 pitch_energy_modulate(const Tensor3& y, const AffineField& pitch,
                              const AffineField& energy) {
  require(pitch.gamma.same_shape(y) && pitch.beta.same_shape(y) && energy.gamma.same_shape(y) &&
              energy.beta.same_shape(y),
          ErrorCode::kShapeMismatch, "pitch/energy affines must match the input shape");
  Tensor3 out(y.frames(), y.channels(), y.batch());
  auto& o = out.data();
  const auto& in = y.data();
  const auto& gp = pitch.gamma.data();
  const auto& bp = pitch.beta.data();
  const auto& ge = energy.gamma.data();
  const auto& be = energy.beta.data();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = ge[i] * (gp[i] * in[i] + bp[i]) + be[i];
  return out;
}

Matrix concat_conditioning(const Conditioning& cond, std::size_t b) {
  const std::size_t frames = cond.pitch.cols();
  const std::size_t dim = cond.speaker.cols();
  Matrix f(frames, dim + 2);
  for (std::size_t t = 0; t < frames; ++t) {
    for (std::size_t c = 0; c < dim; ++c) f(t, c) = cond.speaker(b, c);
    f(t, dim) = cond.pitch(b, t);
    f(t, dim + 1) = cond.energy(b, t);
  }
  return f;
}

AffineField attention_affine(const Conditioning& cond, const AttentionNormWeights& weights,
                             const NormKernelConfig& cfg) {
  require(cond.speaker.cols() + 2 == weights.attention.query.in, ErrorCode::kShapeMismatch,
          "concatenated conditioning width does not match attention input");
  require(cond.pitch.rows() == cond.batch() && cond.energy.rows() == cond.batch() &&
              cond.energy.cols() == cond.pitch.cols(),
          ErrorCode::kShapeMismatch, "pitch and energy tracks must be batch x frames");
  const std::size_t frames = cond.pitch.cols();
  AffineField field{Tensor3(frames, weights.gamma.out, cond.batch()),
                    Tensor3(frames, weights.beta.out, cond.batch())};
  for (std::size_t b = 0; b < cond.batch(); ++b) {
    const Matrix features = concat_conditioning(cond, b);
    const Matrix attended =
        multi_head_attention(features, weights.attention, cfg.attention_divisor);
    field.gamma.set_slice(b, conv1d(attended, weights.gamma));
    field.beta.set_slice(b, conv1d(attended, weights.beta));
  }
  return field;
}

Tensor3 attention_adaptive_norm(const Tensor3& x, const Conditioning& cond,
                                const AttentionNormWeights& weights, MixParam rho,
                                const NormKernelConfig& cfg) {
  require(cond.batch() == x.batch() && cond.pitch.cols() == x.frames(),
          ErrorCode::kShapeMismatch, "conditioning tracks must cover every frame and batch");
  return mix_adaptive_norm(x, weights.ln, attention_affine(cond, weights, cfg), rho, cfg.eps);
}

Tensor3 conv_norm_stage(const Tensor3& x, const Conditioning& cond,
                        const ConvNormWeights& weights, MixParam rho,
                        const NormKernelConfig& cfg) {
  require(cond.batch() == x.batch(), ErrorCode::kShapeMismatch,
          "conditioning batch does not match input");
  std::vector<AffinePair> speaker;
  speaker.reserve(x.batch());
  for (std::size_t b = 0; b < x.batch(); ++b) {
    speaker.push_back(affine_from_speaker(cond.speaker.row(b), weights.speaker));
  }
  Tensor3 y = conv_adaptive_norm(x, weights.ln, speaker, rho, cfg.eps);
  if (!weights.modulate_pitch_energy) return y;
  require(cond.pitch.cols() == x.frames() && cond.energy.cols() == x.frames(),
          ErrorCode::kShapeMismatch, "pitch/energy tracks must cover every frame");
  return pitch_energy_modulate(y, track_field(cond.pitch, weights.pitch),
                               track_field(cond.energy, weights.energy));
}

std::pair<std::vector<double>, std::vector<double>> scale_tracks(
    std::span<const double> pitch, std::span<const double> energy, double alpha_f0,
    double alpha_energy) {
  require(alpha_f0 > 0.0 && alpha_energy > 0.0, ErrorCode::kInvalidArgument,
          "scaling factors must be positive");
  require(pitch.size() == energy.size(), ErrorCode::kShapeMismatch,
          "pitch and energy tracks differ in length");
  std::vector<double> p(pitch.begin(), pitch.end());
  std::vector<double> e(energy.begin(), energy.end());
  for (double& v : p) v *= alpha_f0;
  for (double& v : e) v *= alpha_energy;
  return {std::move(p), std::move(e)};
}

}  // namespace prosody::adanorm
