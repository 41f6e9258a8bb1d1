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

#include "invlearn/policy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace invlearn {

namespace {

// Both pieces of the step need the same (t, d_prev) bookkeeping.
// Returns the observed demand, or nothing in period 1.
std::optional<Level> begin_period(PolicyState& state, std::optional<Level> d_prev) {
  if ((state.t == 0) != !d_prev.has_value()) {
    throw std::logic_error("policy step: previous demand must be absent exactly in period 1");
  }
  if (d_prev && (*d_prev < 0 || *d_prev > state.dbar)) {
    throw std::out_of_range("policy step: demand " + std::to_string(*d_prev) + " out of range");
  }
  ++state.t;
  if (d_prev) state.d_prev = *d_prev;
  return d_prev;
}

Level finish_period(PolicyState& state, Level yhat, std::optional<Level> d_prev) {
  const Level carried = d_prev ? state.y_prev - *d_prev : 0;
  const Level y = std::max(yhat, carried);
  state.yhat_prev = yhat;
  state.y_prev = y;
  return y;
}

bool reaches(std::int64_t cum, std::int64_t n, double beta) {
  return static_cast<double>(cum) / static_cast<double>(n) >= beta;
}

}  // namespace

PolicyKind policy_from_id(std::string_view id) {
  if (id == "newsvendor") return PolicyKind::Newsvendor;
  if (id == "sa") return PolicyKind::StochasticApprox;
  if (id == "updown") return PolicyKind::UpDown;
  if (id == "oracle") return PolicyKind::Oracle;
  throw std::invalid_argument("unknown policy '" + std::string(id) + "'");
}

std::string_view policy_id(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Newsvendor: return "newsvendor";
    case PolicyKind::StochasticApprox: return "sa";
    case PolicyKind::UpDown: return "updown";
    case PolicyKind::Oracle: return "oracle";
  }
  return "?";
}

double step_size(const StepSizeSchedule& schedule, std::int64_t t) {
  if (t < 1) throw std::invalid_argument("step_size: period must be >= 1");
  return schedule.dbar / (std::max(schedule.h, schedule.b) * std::sqrt(static_cast<double>(t)));
}

PolicyState make_policy_state(PolicyKind kind, Level dbar) {
  if (kind == PolicyKind::Oracle) throw std::invalid_argument("oracle state needs the true pmf");
  return PolicyState(kind, dbar);
}

PolicyState make_oracle_state(const Pmf& pmf, const CostParams& params) {
  PolicyState state(PolicyKind::Oracle, pmf.dbar());
  state.oracle_level = oracle_policy(pmf, params);
  return state;
}

Level empirical_quantile(const EmpiricalCounts& counts, double beta) {
  if (counts.n == 0) throw std::logic_error("empirical_quantile: no observations");
  std::int64_t cum = 0;
  for (Level d = 0; d < counts.dbar; ++d) {
    cum += counts.counts[static_cast<std::size_t>(d)];
    if (reaches(cum, counts.n, beta)) return d;
  }
  return counts.dbar;
}

Level policy0_step(PolicyState& state, const CostParams& params, std::optional<Level> d_prev) {
  d_prev = begin_period(state, d_prev);
  if (!d_prev) return finish_period(state, 0, d_prev);

  empirical_update(state.counts, *d_prev);
  if (*d_prev <= state.quantile) ++state.cum_at_quantile;
  // One observation moves the quantile by an amortised O(1) number of levels.
  const double beta = params.beta();
  const auto& c = state.counts.counts;
  const std::int64_t n = state.counts.n;
  while (state.quantile > 0 &&
         reaches(state.cum_at_quantile - c[static_cast<std::size_t>(state.quantile)], n, beta)) {
    state.cum_at_quantile -= c[static_cast<std::size_t>(state.quantile)];
    --state.quantile;
  }
  while (state.quantile < state.dbar && !reaches(state.cum_at_quantile, n, beta)) {
    ++state.quantile;
    state.cum_at_quantile += c[static_cast<std::size_t>(state.quantile)];
  }
  return finish_period(state, state.quantile, d_prev);
}

Level randomized_round(double z, double u) {
  const double lo = std::floor(z);
  const double hi = std::ceil(z);
  return static_cast<Level>(u < hi - z ? lo : hi);
}

Level policy1_step(PolicyState& state, const CostParams& params, const StepSizeSchedule& schedule,
                   std::optional<Level> d_prev, Stream& rng) {
  d_prev = begin_period(state, d_prev);
  if (!d_prev) {
    state.z = 0.0;
    return finish_period(state, 0, d_prev);
  }
  const double eps = step_size(schedule, state.t - 1);
  const Level d = *d_prev;
  const double floor_z = std::floor(state.z);
  // ŷ was rounded down (or z was integral): overage means d <= y.
  // ŷ was rounded up: overage means d <= y - 1.
  const bool rounded_down = static_cast<double>(state.yhat_prev) == floor_z;
  const bool overage = rounded_down ? d <= state.y_prev : d <= state.y_prev - 1;
  const double step = overage ? -params.h() * eps : params.b() * eps;
  state.z = std::clamp(state.z + step, 0.0, static_cast<double>(state.dbar));

  return finish_period(state, randomized_round(state.z, rng.uniform()), d_prev);
}

Level policy2_step(PolicyState& state, const CostParams& params, const StepSizeSchedule& schedule,
                   std::optional<Level> d_prev, Stream& rng) {
  d_prev = begin_period(state, d_prev);
  if (!d_prev) return finish_period(state, 0, d_prev);
  const double eps = step_size(schedule, state.t - 1);
  const Level d = *d_prev;
  const double u = rng.uniform();
  Level yhat = state.yhat_prev;
  if (d <= state.y_prev - 1) {
    if (u < std::min(params.h() * eps, 1.0)) --yhat;
  } else if (d >= state.y_prev + 1) {
    if (u < std::min(params.b() * eps, 1.0)) ++yhat;
  } else {
    const double diff = params.h() - params.b();
    const int sgn = (diff > 0.0) - (diff < 0.0);
    if (sgn != 0 && u < std::min(std::abs(diff) * eps / 2.0, 1.0)) yhat -= sgn;
  }
  yhat = std::clamp(yhat, 0, state.dbar);
  return finish_period(state, yhat, d_prev);
}

Level oracle_policy(const Pmf& pmf, const CostParams& params) {
  return quantile(cdf(pmf), params.beta());
}

Level policy_step(PolicyState& state, const CostParams& params, const StepSizeSchedule& schedule,
                  std::optional<Level> d_prev, Stream& rng) {
  switch (state.kind) {
    case PolicyKind::Newsvendor: return policy0_step(state, params, d_prev);
    case PolicyKind::StochasticApprox: return policy1_step(state, params, schedule, d_prev, rng);
    case PolicyKind::UpDown: return policy2_step(state, params, schedule, d_prev, rng);
    case PolicyKind::Oracle: {
      d_prev = begin_period(state, d_prev);
      return finish_period(state, state.oracle_level, d_prev);
    }
  }
  throw std::logic_error("policy_step: bad policy kind");
}

}  // namespace invlearn
