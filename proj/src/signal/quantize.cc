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

#include "prosody/signal/quantize.h"

#include <algorithm>
#include <cmath>

#include "prosody/error.h"

namespace prosody::signal {

QuantizedTrack quantize_track(std::span<const double> values, double lo, double hi,
                              int n_bins) {
  require(lo < hi, ErrorCode::kInvalidArgument, "quantization range requires lo < hi");
  require(n_bins >= 1, ErrorCode::kInvalidArgument, "n_bins must be >= 1");

  const double width = (hi - lo) / n_bins;
  QuantizedTrack q;
  q.bin_edges.resize(static_cast<std::size_t>(n_bins) + 1);
  for (int i = 0; i <= n_bins; ++i) q.bin_edges[static_cast<std::size_t>(i)] = lo + i * width;
  q.bin_edges.back() = hi;

  q.indices.resize(values.size());
  q.one_hot = Matrix(values.size(), static_cast<std::size_t>(n_bins));
  for (std::size_t t = 0; t < values.size(); ++t) {
    const double v = std::clamp(values[t], lo, hi);
    int index = static_cast<int>(std::floor((v - lo) / width));
    index = std::clamp(index, 0, n_bins - 1);
    q.indices[t] = index;
    q.one_hot(t, static_cast<std::size_t>(index)) = 1.0;
  }
  return q;
}

std::vector<double> dequantize(const QuantizedTrack& q) {
  std::vector<double> out(q.indices.size());
  for (std::size_t t = 0; t < out.size(); ++t) {
    const auto i = static_cast<std::size_t>(q.indices[t]);
    out[t] = 0.5 * (q.bin_edges[i] + q.bin_edges[i + 1]);
  }
  return out;
}

}  // namespace prosody::signal
