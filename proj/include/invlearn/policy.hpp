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
#include <optional>
#include <string_view>

#include "invlearn/cost.hpp"
#include "invlearn/demand.hpp"
#include "invlearn/rng.hpp"

namespace invlearn {

enum class PolicyKind { Newsvendor = 0, StochasticApprox = 1, UpDown = 2, Oracle = 3 };

/// "newsvendor" | "sa" | "updown" | "oracle". Throws std::invalid_argument otherwise.
PolicyKind policy_from_id(std::string_view id);
std::string_view policy_id(PolicyKind kind);

/// eps_t = dbar / (max(h, b) * sqrt(t)).
struct StepSizeSchedule {
  Level dbar = 0;
  double h = 0.0;
  double b = 0.0;

  static StepSizeSchedule from(Level dbar, const CostParams& params) {
    return {dbar, params.h(), params.b()};
  }
};

double step_size(const StepSizeSchedule& schedule, std::int64_t t);

/// Mutable per-path state shared by all policy variants.
///
/// After a step for period t: `t` holds t, `yhat_prev` holds ŷ_t and `y_prev`
/// holds y_t. The next step receives d_t.
struct PolicyState {
  PolicyKind kind;
  Level dbar;
  std::int64_t t = 0;
  Level yhat_prev = 0;
  Level y_prev = 0;
  Level d_prev = 0;

  EmpiricalCounts counts;  // newsvendor
  Level quantile = 0;      // newsvendor: current empirical beta-quantile
  std::int64_t cum_at_quantile = 0;

  double z = 0.0;  // stochastic approximation

  Level oracle_level = 0;

  PolicyState(PolicyKind kind_in, Level dbar_in) : kind(kind_in), dbar(dbar_in), counts(dbar_in) {}
};

/// Fresh state for period 1. The oracle needs the true pmf and is built by
/// make_oracle_state instead.
PolicyState make_policy_state(PolicyKind kind, Level dbar);
PolicyState make_oracle_state(const Pmf& pmf, const CostParams& params);

/// Smallest d whose empirical cdf (cumulative count / n) reaches beta.
Level empirical_quantile(const EmpiricalCounts& counts, double beta);

/// Newsvendor on the empirical distribution. Orders nothing in period 1.
Level policy0_step(PolicyState& state, const CostParams& params, std::optional<Level> d_prev);

/// floor(z) when u < ceil(z) - z, else ceil(z). With u uniform on [0,1) the
/// result is floor(z) with probability ceil(z) - z.
Level randomized_round(double z, double u);

/// Stochastic-approximation policy with randomised rounding of the auxiliary
/// iterate z. Draws one uniform per period from period 2 on.
Level policy1_step(PolicyState& state, const CostParams& params, const StepSizeSchedule& schedule,
                   std::optional<Level> d_prev, Stream& rng);

/// Up-and-down policy. Draws one uniform per period from period 2 on.
Level policy2_step(PolicyState& state, const CostParams& params, const StepSizeSchedule& schedule,
                   std::optional<Level> d_prev, Stream& rng);

Level oracle_policy(const Pmf& pmf, const CostParams& params);

/// Dispatches on state.kind. Returns y_t; ŷ_t is left in state.yhat_prev.
Level policy_step(PolicyState& state, const CostParams& params, const StepSizeSchedule& schedule,
                  std::optional<Level> d_prev, Stream& rng);

}  // namespace invlearn
