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

#include "prosody/speaker/gnb.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "prosody/error.h"

namespace prosody::speaker {

GnbModel gnb_fit(std::span<const Embedding> train, double variance_floor) {
  std::vector<std::string> classes;
  for (const auto& e : train) classes.push_back(e.speaker_id);
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  return gnb_fit(train, std::move(classes), variance_floor);
}

GnbModel gnb_fit(std::span<const Embedding> train, std::vector<std::string> classes,
                 double variance_floor) {
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  require(classes.size() >= 2, ErrorCode::kInvalidArgument,
          "naive Bayes needs at least two classes");
  require(!train.empty(), ErrorCode::kEmptyInput, "no training samples");
  const std::size_t dim = train.front().vector.size();

  GnbModel m;
  m.classes = classes;
  m.means.assign(classes.size(), std::vector<double>(dim, 0.0));
  m.variances.assign(classes.size(), std::vector<double>(dim, 0.0));
  m.priors.assign(classes.size(), 0.0);
  std::vector<std::size_t> counts(classes.size(), 0);
  std::vector<std::size_t> label(train.size());

  for (std::size_t n = 0; n < train.size(); ++n) {
    const auto& e = train[n];
    require(e.vector.size() == dim, ErrorCode::kShapeMismatch, "embedding widths differ");
    auto it = std::lower_bound(classes.begin(), classes.end(), e.speaker_id);
    require(it != classes.end() && *it == e.speaker_id, ErrorCode::kInvalidArgument,
            "sample label '" + e.speaker_id + "' is not a listed class");
    label[n] = static_cast<std::size_t>(it - classes.begin());
    ++counts[label[n]];
    for (std::size_t d = 0; d < dim; ++d) m.means[label[n]][d] += e.vector[d];
  }
  for (std::size_t k = 0; k < classes.size(); ++k) {
    require(counts[k] > 0, ErrorCode::kEmptyInput,
            "class '" + classes[k] + "' has no training samples");
    for (double& v : m.means[k]) v /= static_cast<double>(counts[k]);
    m.priors[k] = static_cast<double>(counts[k]) / static_cast<double>(train.size());
  }
  for (std::size_t n = 0; n < train.size(); ++n) {
    const std::size_t k = label[n];
    for (std::size_t d = 0; d < dim; ++d) {
      const double diff = train[n].vector[d] - m.means[k][d];
      m.variances[k][d] += diff * diff;
    }
  }
  for (std::size_t k = 0; k < classes.size(); ++k) {
    for (double& v : m.variances[k]) {
      v = std::max(v / static_cast<double>(counts[k]), variance_floor);
    }
  }
  return m;
}

std::vector<double> gnb_predict(const GnbModel& model, std::span<const double> x) {
  require(x.size() == model.dim(), ErrorCode::kShapeMismatch,
          "query width does not match the fitted model");
  const std::size_t classes = model.classes.size();
  std::vector<double> log_post(classes);
  for (std::size_t k = 0; k < classes; ++k) {
    double acc = std::log(model.priors[k]);
    for (std::size_t d = 0; d < x.size(); ++d) {
      const double var = model.variances[k][d];
      const double diff = x[d] - model.means[k][d];
      acc -= 0.5 * (std::log(2.0 * std::numbers::pi * var) + diff * diff / var);
    }
    log_post[k] = acc;
  }
  const double top = *std::max_element(log_post.begin(), log_post.end());
  double norm = 0.0;
  for (double v : log_post) norm += std::exp(v - top);
  const double log_norm = top + std::log(norm);
  std::vector<double> probs(classes);
  for (std::size_t k = 0; k < classes; ++k) probs[k] = std::exp(log_post[k] - log_norm);
  return probs;
}

std::size_t gnb_classify(const GnbModel& model, std::span<const double> x) {
  const auto p = gnb_predict(model, x);
  return static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
}

}  // namespace prosody::speaker
