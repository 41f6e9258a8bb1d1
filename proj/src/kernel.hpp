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

// Internal: the per-cell loop shared by the OpenMP kernel and the benchmark.

#include <cstdint>
#include <span>

#include "invlearn/harness.hpp"

namespace invlearn::detail {

/// Steps one policy through `demand` and adds its regret at each checkpoint
/// (1-based periods) to `sums`. Arithmetic matches regret_trace term by term.
inline void accumulate_cell(const CostParams& params, const StepSizeSchedule& schedule, Level oracle,
                            PolicyState state, std::span<const Level> demand, Stream& rng,
                            std::span<const std::int64_t> checkpoints, std::span<double> sums) {
  double policy = 0.0;
  double bench = 0.0;
  std::size_t next = 0;
  std::optional<Level> d_prev;
  for (std::size_t t = 0; t < demand.size() && next < checkpoints.size(); ++t) {
    const Level y = policy_step(state, params, schedule, d_prev, rng);
    policy += stage_cost(params, y, demand[t]);
    bench += stage_cost(params, oracle, demand[t]);
    if (static_cast<std::int64_t>(t) + 1 == checkpoints[next]) {
      sums[next] += policy - bench;
      ++next;
    }
    d_prev = demand[t];
  }
}

/// Fills R and D from the per-distribution regrets.
void finalize_surface(RegretSurface& surface);

/// Surface skeleton with the per-distribution separation data filled in.
RegretSurface empty_surface(const ExperimentConfig& config, std::span<const Pmf> dists);

}  // namespace invlearn::detail
