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

#include "prosody/speaker/similarity.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <iomanip>

#include "prosody/csv.h"
#include "prosody/error.h"

namespace prosody::speaker {
namespace {

std::vector<std::size_t> grouped_order(std::span<const Embedding> set) {
  std::vector<std::size_t> order(set.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (set[a].speaker_id != set[b].speaker_id) return set[a].speaker_id < set[b].speaker_id;
    return set[a].utterance_id < set[b].utterance_id;
  });
  return order;
}

}  // namespace

double cosine(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), ErrorCode::kShapeMismatch, "embedding widths differ");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  require(na > 0.0 && nb > 0.0, ErrorCode::kInvalidArgument,
          "cosine similarity undefined for a zero-norm vector");
  const double c = dot / (std::sqrt(na) * std::sqrt(nb));
  return std::clamp(c, -1.0, 1.0);
}

SimilarityMatrix cross_similarity(std::span<const Embedding> generated,
                                  std::span<const Embedding> actual) {
  require(!generated.empty() && !actual.empty(), ErrorCode::kEmptyInput,
          "cross similarity needs nonempty generated and actual sets");
  const auto row_order = grouped_order(generated);
  const auto col_order = grouped_order(actual);
  SimilarityMatrix m;
  m.values = Matrix(row_order.size(), col_order.size());
  for (std::size_t r : row_order) m.rows.push_back({generated[r].speaker_id, generated[r].utterance_id});
  for (std::size_t c : col_order) m.cols.push_back({actual[c].speaker_id, actual[c].utterance_id});
  for (std::size_t i = 0; i < row_order.size(); ++i) {
    for (std::size_t j = 0; j < col_order.size(); ++j) {
      m.values(i, j) = cosine(generated[row_order[i]], actual[col_order[j]]);
    }
  }
  return m;
}

SimilarityMatrix transpose(const SimilarityMatrix& m) {
  SimilarityMatrix t;
  t.rows = m.cols;
  t.cols = m.rows;
  t.values = Matrix(m.values.cols(), m.values.rows());
  for (std::size_t i = 0; i < m.values.rows(); ++i) {
    for (std::size_t j = 0; j < m.values.cols(); ++j) t.values(j, i) = m.values(i, j);
  }
  return t;
}

DistributionStats describe(std::vector<double> values) {
  DistributionStats s;
  s.count = values.size();
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  const std::size_t mid = values.size() / 2;
  s.median = values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
  return s;
}

SimilaritySummary similarity_summary(const SimilarityMatrix& m) {
  require(m.rows.size() == m.values.rows() && m.cols.size() == m.values.cols(),
          ErrorCode::kShapeMismatch, "similarity labels do not match matrix shape");
  std::vector<double> same, different;
  for (std::size_t i = 0; i < m.values.rows(); ++i) {
    for (std::size_t j = 0; j < m.values.cols(); ++j) {
      (m.rows[i].speaker_id == m.cols[j].speaker_id ? same : different).push_back(m.values(i, j));
    }
  }
  return {describe(std::move(same)), describe(std::move(different))};
}

std::string similarity_csv(const SimilarityMatrix& m) {
  std::ostringstream out;
  out << std::setprecision(17) << "generated\\actual";
  for (const auto& c : m.cols) out << ',' << csv::escape(c.speaker_id + "/" + c.utterance_id);
  out << '\n';
  for (std::size_t i = 0; i < m.rows.size(); ++i) {
    out << csv::escape(m.rows[i].speaker_id + "/" + m.rows[i].utterance_id);
    for (std::size_t j = 0; j < m.cols.size(); ++j) out << ',' << m.values(i, j);
    out << '\n';
  }
  return out.str();
}

}  // namespace prosody::speaker
