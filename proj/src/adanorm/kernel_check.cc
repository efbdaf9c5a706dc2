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

#include "prosody/adanorm/kernel_check.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

#include "prosody/adanorm/weights.h"

namespace prosody::adanorm {
namespace {

using Rng = std::mt19937_64;

Tensor3 random_tensor(Rng& rng, std::size_t t, std::size_t c, std::size_t b, double lo = -1.0,
                      double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Tensor3 x(t, c, b);
  for (double& v : x.data()) v = dist(rng);
  return x;
}

std::vector<double> random_vector(Rng& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(n);
  for (double& e : v) e = dist(rng);
  return v;
}

Matrix random_matrix(Rng& rng, std::size_t r, std::size_t c, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Matrix m(r, c);
  for (double& v : m.data()) v = dist(rng);
  return m;
}

struct Problem {
  Tensor3 x;
  AffinePair ln;
  std::vector<AffinePair> speaker;
  AffineField pitch;
  AffineField energy;
  double rho = kInitialRho;
  Tensor3 upstream;

  double loss() const {
    const Tensor3 out = pitch_energy_modulate(
        conv_adaptive_norm(x, ln, speaker, MixParam(rho)), pitch, energy);
    double acc = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) acc += out.data()[i] * upstream.data()[i];
    return acc;
  }

  // Every differentiable scalar in declaration order.
  void for_each_scalar(const std::function<void(double&)>& f) {
    for (double& v : x.data()) f(v);
    for (double& v : ln.gamma) f(v);
    for (double& v : ln.beta) f(v);
    for (auto& s : speaker) {
      for (double& v : s.gamma) f(v);
      for (double& v : s.beta) f(v);
    }
    for (double& v : pitch.gamma.data()) f(v);
    for (double& v : pitch.beta.data()) f(v);
    for (double& v : energy.gamma.data()) f(v);
    for (double& v : energy.beta.data()) f(v);
    f(rho);
  }
};

Problem random_problem(Rng& rng, std::size_t t, std::size_t c, std::size_t b) {
  Problem p;
  p.x = random_tensor(rng, t, c, b);
  p.ln = {random_vector(rng, c, 0.5, 1.5), random_vector(rng, c)};
  for (std::size_t i = 0; i < b; ++i) {
    p.speaker.push_back({random_vector(rng, c, 0.5, 1.5), random_vector(rng, c)});
  }
  p.pitch = {random_tensor(rng, t, c, b, 0.5, 1.5), random_tensor(rng, t, c, b)};
  p.energy = {random_tensor(rng, t, c, b, 0.5, 1.5), random_tensor(rng, t, c, b)};
  p.rho = std::uniform_real_distribution<double>(0.05, 0.95)(rng);
  p.upstream = random_tensor(rng, t, c, b);
  return p;
}

std::vector<double> flatten_grads(const AdaptiveNormGrads& g) {
  std::vector<double> out(g.x.data());
  out.insert(out.end(), g.ln.gamma.begin(), g.ln.gamma.end());
  out.insert(out.end(), g.ln.beta.begin(), g.ln.beta.end());
  for (const auto& s : g.speaker) {
    out.insert(out.end(), s.gamma.begin(), s.gamma.end());
    out.insert(out.end(), s.beta.begin(), s.beta.end());
  }
  for (const Tensor3* t : {&g.pitch.gamma, &g.pitch.beta, &g.energy.gamma, &g.energy.beta}) {
    out.insert(out.end(), t->data().begin(), t->data().end());
  }
  out.push_back(g.rho);
  return out;
}

KernelCheckResult make_result(std::string name, double observed, double tolerance,
                              std::string detail, bool inclusive = false) {
  KernelCheckResult r;
  r.name = std::move(name);
  r.observed = observed;
  r.tolerance = tolerance;
  r.passed = inclusive ? observed <= tolerance : observed < tolerance;
  r.detail = std::move(detail);
  return r;
}

KernelCheckResult check_norm_statistics(Rng& rng, int trials) {
  double worst_mean = 0.0, worst_var = 0.0;
  for (int i = 0; i < trials; ++i) {
    const Tensor3 x = random_tensor(rng, 16, 12, 3, -3.0, 3.0);
    const Tensor3 in = instance_norm(x);
    const Tensor3 ln = normalize_over_channels(x);
    for (std::size_t b = 0; b < x.batch(); ++b) {
      for (std::size_t c = 0; c < x.channels(); ++c) {
        double m = 0.0, v = 0.0;
        for (std::size_t t = 0; t < x.frames(); ++t) m += in(t, c, b);
        m /= x.frames();
        for (std::size_t t = 0; t < x.frames(); ++t) v += (in(t, c, b) - m) * (in(t, c, b) - m);
        v /= x.frames();
        worst_mean = std::max(worst_mean, std::abs(m));
        worst_var = std::max(worst_var, std::abs(v - 1.0));
      }
      for (std::size_t t = 0; t < x.frames(); ++t) {
        double m = 0.0, v = 0.0;
        for (std::size_t c = 0; c < x.channels(); ++c) m += ln(t, c, b);
        m /= x.channels();
        for (std::size_t c = 0; c < x.channels(); ++c) v += (ln(t, c, b) - m) * (ln(t, c, b) - m);
        v /= x.channels();
        worst_mean = std::max(worst_mean, std::abs(m));
        worst_var = std::max(worst_var, std::abs(v - 1.0));
      }
    }
  }
  const bool ok = worst_mean < 1e-9 && worst_var < 1e-6;
  char detail[128];
  std::snprintf(detail, sizeof detail, "max |mean| %.2e, max |var-1| %.2e", worst_mean, worst_var);
  KernelCheckResult r = make_result("norm statistics", worst_var, 1e-6, detail);
  r.passed = ok;
  return r;
}

KernelCheckResult check_mix_convexity(Rng& rng, int trials) {
  double worst = 0.0;
  for (int i = 0; i < trials; ++i) {
    const std::size_t t = 6, c = 5, b = 2;
    const Tensor3 x = random_tensor(rng, t, c, b);
    const AffinePair ln{random_vector(rng, c), random_vector(rng, c)};
    const AffineField cond{random_tensor(rng, t, c, b), random_tensor(rng, t, c, b)};
    const Tensor3 x_ln = normalize_over_channels(x);
    const Tensor3 x_in = instance_norm(x);
    for (double rho : {0.0, 0.5, kInitialRho, 1.0}) {
      const Tensor3 y = mix_adaptive_norm(x, ln, cond, MixParam(rho));
      for (std::size_t bb = 0; bb < b; ++bb) {
        for (std::size_t tt = 0; tt < t; ++tt) {
          for (std::size_t cc = 0; cc < c; ++cc) {
            const double a = ln.gamma[cc] * x_ln(tt, cc, bb) + ln.beta[cc];
            const double s = cond.gamma(tt, cc, bb) * x_in(tt, cc, bb) + cond.beta(tt, cc, bb);
            const double expect = rho * a + (1.0 - rho) * s;
            worst = std::max(worst, std::abs(y(tt, cc, bb) - expect));
            const double lo = std::min(a, s) - 1e-12, hi = std::max(a, s) + 1e-12;
            if (y(tt, cc, bb) < lo || y(tt, cc, bb) > hi) worst = std::max(worst, 1.0);
          }
        }
      }
    }
  }
  return make_result("adaptive mix convexity", worst, 1e-12, "rho in {0, 0.5, 0.7, 1}", true);
}

KernelCheckResult check_clamp(Rng& rng) {
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  int violations = 0;
  for (int i = 0; i < 1000; ++i) {
    const double raw = dist(rng);
    const double v = clamp_rho(raw).value();
    const double expect = std::min(1.0, std::max(0.0, raw));
    if (v < 0.0 || v > 1.0 || v != expect) ++violations;
  }
  return make_result("rho clamping", violations, 0.0, "1000 raw values in [-5, 5]", true);
}

KernelCheckResult check_gradients(std::uint64_t seed, int trials) {
  GradientCheckError worst;
  for (int i = 0; i < trials; ++i) {
    const GradientCheckError e = gradient_check_error(seed + static_cast<std::uint64_t>(i), 7, 5, 2);
    worst.relative = std::max(worst.relative, e.relative);
    worst.absolute = std::max(worst.absolute, e.absolute);
  }
  char detail[128];
  std::snprintf(detail, sizeof detail, "%d trials, T=7 C=5 B=2, h=1e-5, max abs %.1e", trials,
                worst.absolute);
  return make_result("backward vs finite differences", worst.relative, 1e-5, detail);
}

KernelCheckResult check_attention(Rng& rng, int trials) {
  double worst_sum = 0.0;
  double bound_violation = 0.0;
  double closed_form = 0.0;
  for (AttentionDivisor div : {AttentionDivisor::kSqrtDk, AttentionDivisor::kDk}) {
    for (int i = 0; i < trials; ++i) {
      const Matrix q = random_matrix(rng, 5, 4, -3.0, 3.0);
      const Matrix k = random_matrix(rng, 7, 4, -3.0, 3.0);
      const Matrix v = random_matrix(rng, 7, 3);
      const Matrix p = attention_weights(q, k, div);
      for (std::size_t r = 0; r < p.rows(); ++r) {
        double s = 0.0;
        for (double e : p.row(r)) s += e;
        worst_sum = std::max(worst_sum, std::abs(s - 1.0));
      }
      const Matrix out = scaled_attention(q, k, v, div);
      for (std::size_t c = 0; c < v.cols(); ++c) {
        double lo = v(0, c), hi = v(0, c);
        for (std::size_t r = 1; r < v.rows(); ++r) {
          lo = std::min(lo, v(r, c));
          hi = std::max(hi, v(r, c));
        }
        for (std::size_t r = 0; r < out.rows(); ++r) {
          bound_violation = std::max(
              bound_violation, std::max(lo - out(r, c), out(r, c) - hi) - 1e-12);
        }
      }
      // Single key: the output is that key's value row.
      const Matrix k1 = random_matrix(rng, 1, 4);
      const Matrix v1 = random_matrix(rng, 1, 3);
      const Matrix single = scaled_attention(q, k1, v1, div);
      for (std::size_t r = 0; r < single.rows(); ++r) {
        for (std::size_t c = 0; c < 3; ++c) {
          closed_form = std::max(closed_form, std::abs(single(r, c) - v1(0, c)));
        }
      }
    }
  }
  const bool ok = worst_sum < 1e-9 && bound_violation <= 0.0 && closed_form == 0.0;
  char detail[128];
  std::snprintf(detail, sizeof detail, "row-sum err %.2e, bound excess %.2e, single-key err %.2e",
                worst_sum, std::max(0.0, bound_violation), closed_form);
  KernelCheckResult r = make_result("attention properties", worst_sum, 1e-9, detail);
  r.passed = ok;
  return r;
}

KernelCheckResult check_fft_block(std::uint64_t seed, int seeds) {
  FftBlockConfig cfg;
  NormKernelConfig norm_cfg;
  double worst = 0.0;
  bool shapes_ok = true;
  for (int i = 0; i < seeds; ++i) {
    Rng rng(seed + 1000 + static_cast<std::uint64_t>(i));
    const std::size_t frames = 6, batch = 2;
    const Tensor3 x = random_tensor(rng, frames, cfg.hidden, batch);
    Conditioning cond{random_matrix(rng, batch, norm_cfg.speaker_dim),
                      random_matrix(rng, batch, frames, 80.0, 300.0),
                      random_matrix(rng, batch, frames, 0.0, 10.0)};
    const NormKind kind = i % 2 == 0 ? NormKind::kConv : NormKind::kAttention;
    FftBlockWeights w(cfg, norm_cfg, kind);
    fill_constant(w, 0.0);
    const std::vector<double> beta = random_vector(rng, cfg.hidden);
    std::visit([&](auto& stage) { stage.ln.beta = beta; }, w.norm1);
    std::visit([&](auto& stage) { stage.ln.beta = beta; }, w.norm2);
    const Tensor3 y = fft_block_forward(x, cfg, norm_cfg, cond, w, MixParam(1.0));
    shapes_ok = shapes_ok && y.same_shape(x);
    for (std::size_t b = 0; b < batch; ++b) {
      for (std::size_t t = 0; t < frames; ++t) {
        for (std::size_t c = 0; c < cfg.hidden; ++c) {
          worst = std::max(worst, std::abs(y(t, c, b) - beta[c]));
        }
      }
    }
  }
  KernelCheckResult r = make_result("FFT block zero-weight closed form", worst, 0.0,
                                    "output equals beta_LN at rho = 1", true);
  r.passed = r.passed && shapes_ok;
  return r;
}

}  // namespace

GradientCheckError gradient_check_error(std::uint64_t seed, std::size_t frames,
                                        std::size_t channels, std::size_t batch,
                                        double step) {
  Rng rng(seed);
  Problem p = random_problem(rng, frames, channels, batch);
  const AdaptiveNormForward fwd =
      adaptive_norm_forward(p.x, p.ln, p.speaker, p.pitch, p.energy, MixParam(p.rho));
  const std::vector<double> analytic = flatten_grads(backward_adaptive_norm(p.upstream, fwd.cache));

  std::vector<double> numeric;
  numeric.reserve(analytic.size());
  p.for_each_scalar([&](double& v) {
    const double saved = v;
    v = saved + step;
    const double plus = p.loss();
    v = saved - step;
    const double minus = p.loss();
    v = saved;
    numeric.push_back((plus - minus) / (2.0 * step));
  });

  GradientCheckError err;
  for (std::size_t i = 0; i < analytic.size(); ++i) {
    const double diff = std::abs(analytic[i] - numeric[i]);
    const double mag = std::max(std::abs(analytic[i]), std::abs(numeric[i]));
    err.relative = std::max(err.relative, diff / std::max(mag, kGradientScaleFloor));
    err.absolute = std::max(err.absolute, diff);
    if (mag > 0.0) err.unfloored = std::max(err.unfloored, diff / mag);
  }
  return err;
}

std::vector<KernelCheckResult> run_kernel_checks(const KernelCheckOptions& options) {
  Rng rng(options.seed);
  std::vector<KernelCheckResult> results;
  results.push_back(check_norm_statistics(rng, options.trials));
  results.push_back(check_mix_convexity(rng, options.trials));
  results.push_back(check_clamp(rng));
  results.push_back(check_gradients(options.seed, options.trials));
  results.push_back(check_attention(rng, options.trials));
  results.push_back(check_fft_block(options.seed, 2));
  return results;
}

std::string format_check_table(const std::vector<KernelCheckResult>& results) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-36s %-6s %-12s %-12s %s\n", "check", "status", "observed",
                "tolerance", "detail");
  out += line;
  for (const auto& r : results) {
    std::snprintf(line, sizeof line, "%-36s %-6s %-12.3e %-12.3e %s\n", r.name.c_str(),
                  r.passed ? "PASS" : "FAIL", r.observed, r.tolerance, r.detail.c_str());
    out += line;
  }
  return out;
}

}  // namespace prosody::adanorm
