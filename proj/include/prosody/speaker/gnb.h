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

#ifndef PROSODY_SPEAKER_GNB_H_
#define PROSODY_SPEAKER_GNB_H_

#include <span>
#include <string>
#include <vector>

#include "prosody/speaker/embedding.h"

namespace prosody::speaker {

inline constexpr double kVarianceFloor = 1e-9;

// Diagonal Gaussian naive Bayes over speaker classes, one label per sample.
struct GnbModel {
  std::vector<std::string> classes;  // sorted
  std::vector<std::vector<double>> means;
  std::vector<std::vector<double>> variances;
  std::vector<double> priors;

  std::size_t dim() const { return means.empty() ? 0 : means.front().size(); }
};

// Per-class maximum-likelihood means and variances (floored), empirical
// priors. Classes are the distinct speaker ids of `train`. Throws
// kInvalidArgument with fewer than two classes and kShapeMismatch when
// widths differ.
GnbModel gnb_fit(std::span<const Embedding> train, double variance_floor = kVarianceFloor);

// As above with an explicit class list; throws kEmptyInput when a listed
// class has no training sample and kInvalidArgument for unlisted labels.
GnbModel gnb_fit(std::span<const Embedding> train, std::vector<std::string> classes,
                 double variance_floor = kVarianceFloor);

// Posterior class probabilities, ordered as model.classes.
std::vector<double> gnb_predict(const GnbModel& model, std::span<const double> x);

inline std::vector<double> gnb_predict(const GnbModel& model, const Embedding& e) {
  return gnb_predict(model, e.vector);
}

// Index of the most probable class.
std::size_t gnb_classify(const GnbModel& model, std::span<const double> x);

}  // namespace prosody::speaker

#endif  // PROSODY_SPEAKER_GNB_H_
