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

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <utility>

#include "invlearn/cost.hpp"
#include "invlearn/demand.hpp"

namespace invlearn {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Search cap for tau(); kappa close to zero pushes tau past it.
inline constexpr std::int64_t kTauSearchCap = 1'000'000;

/// Bernoulli relative entropy u ln(u/v) + (1-u) ln((1-u)/(1-v)), with
/// 0 ln(0/x) = 0 and +inf when u puts mass where v has none.
double bernoulli_kl(double u, double v);

/// sum_d g(d) ln(g(d) / f(d)), same conventions. Throws on dbar mismatch.
double kl(const Pmf& g, const Pmf& f);

/// Half the L1 distance.
double total_variation(const Pmf& f, const Pmf& g);

/// t^(dbar+1) exp(-eps (t-1)), evaluated in log space. Not clamped to 1.
double sanov_bound(std::int64_t t, double eps, Level dbar);

/// Largest cdf value strictly below beta (or 0) and smallest strictly above (or 1).
std::pair<double, double> straddle(const Pmf& f, double beta);

/// min(beta - alpha, gamma - beta) for the straddle pair.
double separation(const Pmf& f, double beta);

/// min of the two Bernoulli divergences from beta to its straddle values.
/// Infinite when both straddle values are sentinels.
double kappa(const Pmf& f, double beta);

/// Burn-in horizon: the smallest tau >= 1 such that every t >= tau + 1 has
///   t^2 exp(-kappa (t-1)) < 1/2   and   (t+1)^2 exp(-kappa t) / (t^2 exp(-kappa (t-1))) < exp(-kappa/2).
/// Both conditions hold on an up-set of t, so the answer is the first t where
/// both hold, minus one. Infinite kappa gives 1. Throws std::domain_error for
/// kappa <= 0 or when the search passes kTauSearchCap.
std::int64_t tau(double kappa);

/// Time-invariant regret bound for distributions separated from beta:
///   (2h dbar + b dbar) tau + (3h dbar + b dbar) / 2 / (1 - e^{-kappa/2})
///   + h dbar ((1 - eps_f) / eps_f + 1 / (2 eps_f (1 - e^{-kappa/2}))).
double theorem1_bound(const CostParams& params, Level dbar, double eps_f, double kappa,
                      std::int64_t tau);

struct SeparationProfile {
  double alpha = 0.0;
  double gamma = 1.0;
  double delta = 0.0;
  double kappa = kInfinity;
  std::optional<std::int64_t> tau;  // empty when the search cap is exceeded
};

SeparationProfile separation_profile(const Pmf& f, double beta);

}  // namespace invlearn
