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

#include "oracles.h"

#include <cmath>
#include <complex>
#include <numbers>

namespace prosody::testing::oracle {

std::vector<double> hann_dft_magnitude(std::span<const double> frame) {
  const std::size_t n = frame.size();
  std::vector<double> out(n / 2 + 1);
  for (std::size_t k = 0; k < out.size(); ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double w = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * j / n);
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(k * j % n) / n;
      acc += frame[j] * w * std::polar(1.0, angle);
    }
    out[k] = std::abs(acc);
  }
  return out;
}

Matrix dct_basis(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double scale = k == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
    for (std::size_t j = 0; j < n; ++j) {
      m(k, j) = scale * std::cos(std::numbers::pi * (j + 0.5) * k / n);
    }
  }
  return m;
}

std::vector<double> matvec(const Matrix& m, std::span<const double> x) {
  std::vector<double> y(m.rows(), 0.0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) y[r] += m(r, c) * x[c];
  }
  return y;
}

std::vector<double> difference(std::span<const double> frame, int tau_max) {
  const std::size_t window = frame.size() - static_cast<std::size_t>(tau_max);
  std::vector<double> d;
  for (int tau = 0; tau <= tau_max; ++tau) {
    double s = 0.0;
    for (std::size_t j = 0; j < window; ++j) {
      const double diff = frame[j] - frame[j + tau];
      s += diff * diff;
    }
    d.push_back(s);
  }
  return d;
}

namespace {

double gross(const pitch::PitchTrack& ref, const pitch::PitchTrack& pred, std::size_t t,
             double threshold) {
  const double both = (ref.voiced[t] ? 1.0 : 0.0) * (pred.voiced[t] ? 1.0 : 0.0);
  const double err = std::fabs(ref.f0[t] - pred.f0[t]) > threshold * ref.f0[t] ? 1.0 : 0.0;
  return err * both;
}

}  // namespace

std::optional<double> gpe(const pitch::PitchTrack& ref, const pitch::PitchTrack& pred,
                          double threshold) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t t = 0; t < ref.f0.size(); ++t) {
    num += gross(ref, pred, t, threshold);
    den += (ref.voiced[t] ? 1.0 : 0.0) * (pred.voiced[t] ? 1.0 : 0.0);
  }
  if (den == 0.0) return std::nullopt;
  return num / den;
}

double vde(const pitch::PitchTrack& ref, const pitch::PitchTrack& pred) {
  double num = 0.0;
  for (std::size_t t = 0; t < ref.f0.size(); ++t) {
    num += ref.voiced[t] != pred.voiced[t] ? 1.0 : 0.0;
  }
  return num / static_cast<double>(ref.f0.size());
}

double ffe(const pitch::PitchTrack& ref, const pitch::PitchTrack& pred, double threshold) {
  double num = 0.0;
  for (std::size_t t = 0; t < ref.f0.size(); ++t) {
    num += gross(ref, pred, t, threshold);
    num += ref.voiced[t] != pred.voiced[t] ? 1.0 : 0.0;
  }
  return num / static_cast<double>(ref.f0.size());
}

double mcd(const Matrix& ref, const Matrix& pred, int num_coeffs) {
  double total = 0.0;
  for (std::size_t t = 0; t < ref.rows(); ++t) {
    double s = 0.0;
    for (int k = 0; k < num_coeffs; ++k) {
      const double diff = pred(t, k) - ref(t, k);
      s += diff * diff;
    }
    total += std::sqrt(s);
  }
  return total / static_cast<double>(ref.rows());
}

std::vector<double> central_difference(const std::function<double()>& f,
                                       std::vector<double>& params, double step) {
  std::vector<double> grad(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double saved = params[i];
    params[i] = saved + step;
    const double up = f();
    params[i] = saved - step;
    const double down = f();
    params[i] = saved;
    grad[i] = (up - down) / (2.0 * step);
  }
  return grad;
}

std::vector<double> gaussian_posterior(const std::vector<std::vector<double>>& means,
                                       const std::vector<std::vector<double>>& variances,
                                       const std::vector<double>& priors,
                                       std::span<const double> x) {
  std::vector<double> joint(priors.size());
  double total = 0.0;
  for (std::size_t c = 0; c < priors.size(); ++c) {
    double p = priors[c];
    for (std::size_t d = 0; d < x.size(); ++d) {
      const double var = variances[c][d];
      const double z = x[d] - means[c][d];
      p *= std::exp(-z * z / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var);
    }
    joint[c] = p;
    total += p;
  }
  for (double& p : joint) p /= total;
  return joint;
}

}  // namespace prosody::testing::oracle
