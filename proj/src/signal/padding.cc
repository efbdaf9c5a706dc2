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

#include "prosody/signal/padding.h"

#include "prosody/error.h"

namespace prosody::signal {

void pad_to_match(std::vector<double>& a, std::vector<double>& b) {
  const std::size_t n = std::max(a.size(), b.size());
  a.resize(n, 0.0);
  b.resize(n, 0.0);
}

void pad_to_match(Matrix& a, Matrix& b, PadDomain domain, double offset) {
  if (a.rows() == b.rows()) return;
  require(a.cols() == b.cols(), ErrorCode::kShapeMismatch,
          "cannot pad frame sequences with different widths");
  const double value = pad_value(domain, offset);
  if (a.rows() < b.rows()) {
    a.append_rows(b.rows() - a.rows(), value);
  } else {
    b.append_rows(a.rows() - b.rows(), value);
  }
}

}  // namespace prosody::signal
