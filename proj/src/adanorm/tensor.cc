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

#include "prosody/adanorm/tensor.h"

#include <algorithm>
#include <string>

#include "prosody/error.h"

namespace prosody::adanorm {

Matrix Tensor3::slice(std::size_t b) const {
  Matrix m(frames_, channels_);
  const auto begin = data_.begin() + static_cast<std::ptrdiff_t>(b * frames_ * channels_);
  std::copy(begin, begin + static_cast<std::ptrdiff_t>(frames_ * channels_), m.data().begin());
  return m;
}

void Tensor3::set_slice(std::size_t b, const Matrix& m) {
  require(m.rows() == frames_ && m.cols() == channels_, ErrorCode::kShapeMismatch,
          "slice shape does not match tensor");
  std::copy(m.data().begin(), m.data().end(),
            data_.begin() + static_cast<std::ptrdiff_t>(b * frames_ * channels_));
}

MixParam::MixParam(double rho) : rho_(rho) {
  require(rho >= 0.0 && rho <= 1.0, ErrorCode::kOutOfRange,
          "mixing weight " + std::to_string(rho) + " outside [0, 1]");
}

MixParam clamp_rho(double rho_raw) {
  // NaN has no meaningful bound; treat it as the layer-norm endpoint.
  if (rho_raw != rho_raw) return MixParam(1.0);
  return MixParam(std::clamp(rho_raw, 0.0, 1.0));
}

}  // namespace prosody::adanorm
