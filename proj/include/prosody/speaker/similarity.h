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

#ifndef PROSODY_SPEAKER_SIMILARITY_H_
#define PROSODY_SPEAKER_SIMILARITY_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "prosody/matrix.h"
#include "prosody/speaker/embedding.h"

namespace prosody::speaker {

// a.b / (|a||b|). Throws kInvalidArgument for a zero-norm input and
// kShapeMismatch for differing widths.
double cosine(std::span<const double> a, std::span<const double> b);

inline double cosine(const Embedding& a, const Embedding& b) {
  return cosine(a.vector, b.vector);
}

struct AxisLabel {
  std::string speaker_id;
  std::string utterance_id;

  bool operator==(const AxisLabel&) const = default;
};

// Rows are generated utterances, columns actual utterances, each axis sorted
// by speaker id then utterance id.
struct SimilarityMatrix {
  std::vector<AxisLabel> rows;
  std::vector<AxisLabel> cols;
  Matrix values;
};

// Throws kEmptyInput when either set is empty.
SimilarityMatrix cross_similarity(std::span<const Embedding> generated,
                                  std::span<const Embedding> actual);

SimilarityMatrix transpose(const SimilarityMatrix& m);

struct DistributionStats {
  std::size_t count = 0;
  std::optional<double> mean;    // undefined for an empty partition
  std::optional<double> median;  // mean of the two middle values for even counts
};

struct SimilaritySummary {
  DistributionStats same_speaker;
  DistributionStats different_speaker;
};

DistributionStats describe(std::vector<double> values);

SimilaritySummary similarity_summary(const SimilarityMatrix& m);

// Labeled CSV: header "generated\\actual", then column labels
// "speaker/utterance"; one row per generated utterance.
std::string similarity_csv(const SimilarityMatrix& m);

}  // namespace prosody::speaker

#endif  // PROSODY_SPEAKER_SIMILARITY_H_
