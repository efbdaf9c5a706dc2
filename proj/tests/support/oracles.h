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

#ifndef PROSODY_TESTS_SUPPORT_ORACLES_H_
#define PROSODY_TESTS_SUPPORT_ORACLES_H_

// Reference implementations written directly from the defining formulas.
// They are deliberately naive and share no code with the library.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "prosody/matrix.h"
#include "prosody/pitch/yin.h"

namespace prosody::testing::oracle {

// |sum_n x[n] w[n] exp(-2 pi i k n / N)| for k = 0..N/2, with the periodic
// Hann window w[n] = 0.5 - 0.5 cos(2 pi n / N).
std::vector<double> hann_dft_magnitude(std::span<const double> frame);

// Orthonormal DCT-II basis, row k holds coefficient k's weights.
Matrix dct_basis(std::size_t n);

std::vector<double> matvec(const Matrix& m, std::span<const double> x);

// sum_{j < len - tau_max} (x_j - x_{j+tau})^2, evaluated independently per tau.
std::vector<double> difference(std::span<const double> frame, int tau_max);

std::optional<double> gpe(const pitch::PitchTrack& ref, const pitch::PitchTrack& pred,
                          double threshold);
double vde(const pitch::PitchTrack& ref, const pitch::PitchTrack& pred);
double ffe(const pitch::PitchTrack& ref, const pitch::PitchTrack& pred, double threshold);

// (1/T) sum_t sqrt(sum_{k<K} (pred - ref)^2).
double mcd(const Matrix& ref, const Matrix& pred, int num_coeffs);

// Central differences of f with respect to every entry of `params`.
std::vector<double> central_difference(const std::function<double()>& f,
                                       std::vector<double>& params, double step);

// Posterior by explicit density products: prior_c * prod_d N(x_d; mean, var),
// normalized over classes.
std::vector<double> gaussian_posterior(const std::vector<std::vector<double>>& means,
                                       const std::vector<std::vector<double>>& variances,
                                       const std::vector<double>& priors,
                                       std::span<const double> x);

}  // namespace prosody::testing::oracle

#endif  // PROSODY_TESTS_SUPPORT_ORACLES_H_
