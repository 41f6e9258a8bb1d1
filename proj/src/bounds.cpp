// Copyright 2026 The invlearn Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "invlearn/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <tuple>

#include "invlearn/format.hpp"

namespace invlearn {

namespace {

// x ln(x / y) with the 0 ln(0/y) = 0 and x ln(x/0) = +inf conventions.
double xlogxy(double x, double y) {
  if (x == 0.0) return 0.0;
  if (y == 0.0) return kInfinity;
  return x * std::log(x / y);
}

void check_same_support(const Pmf& a, const Pmf& b, const char* what) {
  if (a.dbar() != b.dbar()) {
    throw std::invalid_argument(std::string(what) + ": supports differ (" + std::to_string(a.dbar()) +
                                " vs " + std::to_string(b.dbar()) + ")");
  }
}

}  // namespace

double bernoulli_kl(double u, double v) {
  if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument("bernoulli_kl: arguments must lie in [0,1]");
  }
  return xlogxy(u, v) + xlogxy(1.0 - u, 1.0 - v);
}

double kl(const Pmf& g, const Pmf& f) {
  check_same_support(g, f, "kl");
  double sum = 0.0;
  for (Level d = 0; d <= g.dbar(); ++d) sum += xlogxy(g[d], f[d]);
  // Rounding can leave a tiny negative total for g close to f.
  return std::max(sum, 0.0);
}

double total_variation(const Pmf& f, const Pmf& g) {
  check_same_support(f, g, "total_variation");
  double sum = 0.0;
  for (Level d = 0; d <= f.dbar(); ++d) sum += std::abs(f[d] - g[d]);
  return sum / 2.0;
}

double sanov_bound(std::int64_t t, double eps, Level dbar) {
  if (t < 1) throw std::invalid_argument("sanov_bound: t must be >= 1");
  const double log_value = (dbar + 1) * std::log(static_cast<double>(t)) - eps * static_cast<double>(t - 1);
  return std::exp(log_value);
}

std::pair<double, double> straddle(const Pmf& f, double beta) {
  double alpha = 0.0;
  double gamma = 1.0;
  for (double F : cdf(f).cum) {
    if (F < beta) alpha = std::max(alpha, F);
    if (F > beta) gamma = std::min(gamma, F);
  }
  return {alpha, gamma};
}

double separation(const Pmf& f, double beta) {
  const auto [alpha, gamma] = straddle(f, beta);
  return std::min(beta - alpha, gamma - beta);
}

double kappa(const Pmf& f, double beta) {
  const auto [alpha, gamma] = straddle(f, beta);
  return std::min(bernoulli_kl(beta, alpha), bernoulli_kl(beta, gamma));
}

std::int64_t tau(double kappa) {
  if (!(kappa > 0.0)) throw std::domain_error("tau: kappa must be positive, got " + format_real(kappa));
  if (std::isinf(kappa)) return 1;
  const double log_half = std::log(0.5);
  for (std::int64_t t = 2; t <= kTauSearchCap + 1; ++t) {
    const double lt = std::log(static_cast<double>(t));
    const bool small = 2.0 * lt - kappa * static_cast<double>(t - 1) < log_half;
    // The ratio reduces to ((t+1)/t)^2 exp(-kappa) < exp(-kappa/2).
    const bool decaying = 2.0 * std::log1p(1.0 / static_cast<double>(t)) < kappa / 2.0;
    if (small && decaying) return t - 1;
  }
  throw std::domain_error("tau: no burn-in below " + std::to_string(kTauSearchCap) + " for kappa " +
                          format_real(kappa));
}

double theorem1_bound(const CostParams& params, Level dbar, double eps_f, double kappa,
                      std::int64_t tau) {
  if (!(eps_f > 0.0)) throw std::invalid_argument("theorem1_bound: eps_f must be positive");
  if (!(kappa > 0.0)) throw std::invalid_argument("theorem1_bound: kappa must be positive");
  if (tau < 1) throw std::invalid_argument("theorem1_bound: tau must be >= 1");
  const double h = params.h();
  const double b = params.b();
  const double gap = 1.0 - std::exp(-kappa / 2.0);
  return (2.0 * h * dbar + b * dbar) * static_cast<double>(tau) + (3.0 * h * dbar + b * dbar) / 2.0 / gap +
         h * dbar * ((1.0 - eps_f) / eps_f + 1.0 / (2.0 * eps_f * gap));
}

SeparationProfile separation_profile(const Pmf& f, double beta) {
  SeparationProfile p;
  std::tie(p.alpha, p.gamma) = straddle(f, beta);
  p.delta = std::min(beta - p.alpha, p.gamma - beta);
  p.kappa = std::min(bernoulli_kl(beta, p.alpha), bernoulli_kl(beta, p.gamma));
  try {
    p.tau = tau(p.kappa);
  } catch (const std::domain_error&) {
    p.tau.reset();
  }
  return p;
}

}  // namespace invlearn
