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

#ifndef PROSODY_ADANORM_KERNEL_CHECK_H_
#define PROSODY_ADANORM_KERNEL_CHECK_H_

#include <cstdint>
#include <string>
#include <vector>

#include "prosody/adanorm/backward.h"

namespace prosody::adanorm {

struct KernelCheckResult {
  std::string name;
  bool passed = false;
  double observed = 0.0;   // worst value seen
  double tolerance = 0.0;  // bound it was compared against
  std::string detail;
};

struct KernelCheckOptions {
  std::uint64_t seed = 0;
  int trials = 100;
};

// Invariant and gradient checks over seeded random inputs.
std::vector<KernelCheckResult> run_kernel_checks(const KernelCheckOptions& options);

// Fixed-width pass/fail table, one row per check.
std::string format_check_table(const std::vector<KernelCheckResult>& results);

// Lower bound on the relative-error denominator. Central differences at
// h = 1e-5 carry roundoff near 1e-10 on these problems, so gradients much
// smaller than this cannot be resolved to 1e-5 relative accuracy.
inline constexpr double kGradientScaleFloor = 1e-4;

struct GradientCheckError {
  double relative = 0.0;  // max |a - n| / max(|a|, |n|, kGradientScaleFloor)
  double absolute = 0.0;  // max |a - n|
  double unfloored = 0.0;  // max |a - n| / max(|a|, |n|)
};

// Central-difference check of backward_adaptive_norm on one random problem.
GradientCheckError gradient_check_error(std::uint64_t seed, std::size_t frames,
                                        std::size_t channels, std::size_t batch,
                                        double step = 1e-5);

}  // namespace prosody::adanorm

#endif  // PROSODY_ADANORM_KERNEL_CHECK_H_
