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

#ifndef PROSODY_ADANORM_TENSOR_H_
#define PROSODY_ADANORM_TENSOR_H_

#include <cstddef>
#include <vector>

#include "prosody/matrix.h"

namespace prosody::adanorm {

// frames x channels x batch array. Storage is batch-major so each batch
// element is a contiguous frames x channels block.
class Tensor3 {
 public:
  Tensor3() = default;
  Tensor3(std::size_t frames, std::size_t channels, std::size_t batch, double fill = 0.0)
      : frames_(frames), channels_(channels), batch_(batch),
        data_(frames * channels * batch, fill) {}

  std::size_t frames() const { return frames_; }
  std::size_t channels() const { return channels_; }
  std::size_t batch() const { return batch_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(std::size_t t, std::size_t c, std::size_t b) {
    return data_[(b * frames_ + t) * channels_ + c];
  }
  double operator()(std::size_t t, std::size_t c, std::size_t b) const {
    return data_[(b * frames_ + t) * channels_ + c];
  }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  bool same_shape(const Tensor3& o) const {
    return frames_ == o.frames_ && channels_ == o.channels_ && batch_ == o.batch_;
  }

  // Copies batch element b out as a frames x channels matrix.
  Matrix slice(std::size_t b) const;
  void set_slice(std::size_t b, const Matrix& m);

  bool operator==(const Tensor3&) const = default;

 private:
  std::size_t frames_ = 0;
  std::size_t channels_ = 0;
  std::size_t batch_ = 0;
  std::vector<double> data_;
};

// Per-channel scale and bias.
struct AffinePair {
  std::vector<double> gamma;
  std::vector<double> beta;

  std::size_t channels() const { return gamma.size(); }
  bool operator==(const AffinePair&) const = default;
};

// Per-frame, per-channel, per-batch scale and bias.
struct AffineField {
  Tensor3 gamma;
  Tensor3 beta;

  bool operator==(const AffineField&) const = default;
};

// Learnable mixing weight, always within [0, 1].
class MixParam {
 public:
  // Throws kOutOfRange for values outside [0, 1]; use clamp_rho for raw
  // optimizer values.
  explicit MixParam(double rho);
  double value() const { return rho_; }

 private:
  double rho_;
};

MixParam clamp_rho(double rho_raw);

}  // namespace prosody::adanorm

#endif  // PROSODY_ADANORM_TENSOR_H_
