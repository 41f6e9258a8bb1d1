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

#include "invlearn/harness.hpp"
#include "kernel.hpp"

namespace invlearn {

// Straight-line reference: full traces per path, no fused loop, no threads.
RegretSurface run_experiment_serial(const ExperimentConfig& config) {
  validate(config);
  const CostParams params = config.cost();
  const std::vector<Pmf> dists = sample_distributions(config);
  RegretSurface surface = detail::empty_surface(config, dists);
  const std::size_t C = surface.checkpoints.size();

  for (std::size_t k = 0; k < dists.size(); ++k) {
    for (std::size_t p = 0; p < surface.policies.size(); ++p) {
      std::vector<double> sums(C, 0.0);
      for (std::int64_t l = 0; l < config.L; ++l) {
        const auto demand = demand_path(config, dists[k], static_cast<std::int64_t>(k), l);
        Stream rng = policy_stream(config, surface.policies[p], static_cast<std::int64_t>(k), l);
        const PathResult path = simulate_path(dists[k], params, surface.policies[p], config.T, rng, demand);
        for (std::size_t c = 0; c < C; ++c) {
          sums[c] += path.regret_trace[static_cast<std::size_t>(surface.checkpoints[c] - 1)];
        }
      }
      for (std::size_t c = 0; c < C; ++c) {
        surface.regrets[(p * surface.K + k) * C + c] = sums[c] / static_cast<double>(config.L);
      }
    }
  }
  detail::finalize_surface(surface);
  return surface;
}

}  // namespace invlearn
