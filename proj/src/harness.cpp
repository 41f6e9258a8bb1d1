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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "invlearn/bounds.hpp"
#include "invlearn/format.hpp"
#include "invlearn/harness.hpp"
#include "kernel.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace invlearn {

void validate(const ExperimentConfig& c) {
  if (c.dbar < 1) throw ConfigError("dbar", "must be a positive integer, got " + std::to_string(c.dbar));
  if (!(c.h_plus_b > 0.0) || !std::isfinite(c.h_plus_b)) {
    throw ConfigError("h_plus_b", "must be positive, got " + format_real(c.h_plus_b));
  }
  if (!(c.beta > 0.0 && c.beta < 1.0)) throw ConfigError("beta", "must lie in (0,1), got " + format_real(c.beta));
  if (c.K < 1) throw ConfigError("K", "must be >= 1, got " + std::to_string(c.K));
  if (c.L < 1) throw ConfigError("L", "must be >= 1, got " + std::to_string(c.L));
  if (c.T < 1) throw ConfigError("T", "must be >= 1, got " + std::to_string(c.T));
  if (c.alphas.empty()) throw ConfigError("alphas", "must not be empty");
  for (double a : c.alphas) {
    if (!(a >= 0.0 && a < 1.0)) throw ConfigError("alphas", "each alpha must lie in [0,1), got " + format_real(a));
  }
  if (!(c.gamma_insep >= 0.0 && c.gamma_insep < 1.0)) {
    throw ConfigError("gamma_insep", "must lie in [0,1), got " + format_real(c.gamma_insep));
  }
  if (c.policies.empty()) throw ConfigError("policies", "must name at least one policy");
  for (std::size_t i = 0; i < c.policies.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (c.policies[i] == c.policies[j]) {
        throw ConfigError("policies", "duplicate policy '" + std::string(policy_id(c.policies[i])) + "'");
      }
    }
  }
  for (std::size_t i = 0; i < c.checkpoints.size(); ++i) {
    const auto t = c.checkpoints[i];
    if (t < 1 || t > c.T) throw ConfigError("checkpoints", "period " + std::to_string(t) + " outside [1, T]");
    if (i > 0 && t <= c.checkpoints[i - 1]) throw ConfigError("checkpoints", "must be strictly increasing");
  }
  if (c.threads < 0) throw ConfigError("threads", "must be >= 0");
}

std::vector<std::int64_t> resolved_checkpoints(const ExperimentConfig& config) {
  if (!config.checkpoints.empty()) return config.checkpoints;
  std::vector<std::int64_t> out;
  for (std::int64_t i = 1; i * i <= config.T; ++i) out.push_back(i * i);
  return out;
}

Pmf sample_distribution(const ExperimentConfig& config, std::int64_t k) {
  Stream rng = derive_stream(config.seed, static_cast<std::uint64_t>(k), 0, StreamTag::Distribution);
  return gen_inseparable(rng, config.dbar, config.cost().beta(), config.gamma_insep);
}

std::vector<Pmf> sample_distributions(const ExperimentConfig& config) {
  std::vector<Pmf> out;
  out.reserve(static_cast<std::size_t>(config.K));
  for (std::int64_t k = 0; k < config.K; ++k) out.push_back(sample_distribution(config, k));
  return out;
}

std::vector<Level> demand_path(const ExperimentConfig& config, const Pmf& pmf, std::int64_t k, std::int64_t l) {
  Stream rng = derive_stream(config.seed, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(l),
                             StreamTag::Demand);
  std::vector<Level> path(static_cast<std::size_t>(config.T));
  sample_path(cdf(pmf), rng, path);
  return path;
}

Stream policy_stream(const ExperimentConfig& config, PolicyKind kind, std::int64_t k, std::int64_t l) {
  return derive_stream(config.seed, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(l),
                       StreamTag::Policy, static_cast<std::uint64_t>(kind));
}

std::uint64_t path_checksum(std::span<const Level> path) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (Level d : path) {
    h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(d));
    h *= 0x100000001b3ULL;
  }
  return h;
}

PathResult simulate_path(const Pmf& pmf, const CostParams& params, PolicyKind kind, std::int64_t T,
                         Stream& path_rng, std::span<const Level> demand) {
  if (static_cast<std::int64_t>(demand.size()) != T) {
    throw std::invalid_argument("simulate_path: demand path length " + std::to_string(demand.size()) +
                                " != T " + std::to_string(T));
  }
  PolicyState state =
      kind == PolicyKind::Oracle ? make_oracle_state(pmf, params) : make_policy_state(kind, pmf.dbar());
  const auto schedule = StepSizeSchedule::from(pmf.dbar(), params);
  std::vector<Level> targets(demand.size());
  std::vector<Level> orders(demand.size());
  std::optional<Level> d_prev;
  for (std::size_t t = 0; t < demand.size(); ++t) {
    orders[t] = policy_step(state, params, schedule, d_prev, path_rng);
    targets[t] = state.yhat_prev;
    d_prev = demand[t];
  }
  PathResult result = regret_trace(params, pmf, demand, orders);
  result.target_trace = std::move(targets);
  return result;
}

std::size_t tail_count(std::size_t K, double alpha) {
  const double exact = (1.0 - alpha) * static_cast<double>(K);
  const double nearest = std::round(exact);
  const double m = std::abs(exact - nearest) <= 1e-9 * static_cast<double>(K) ? nearest : std::ceil(exact);
  return std::clamp<std::size_t>(static_cast<std::size_t>(m), 1, K);
}

namespace {

// Indices of the m largest values (ties by ascending index), returned in
// ascending index order so that m = K sums exactly like a plain mean.
std::vector<std::size_t> top_indices(std::span<const double> values, std::size_t m) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  idx.resize(m);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace

double cvar(std::span<const double> values, double alpha) {
  if (values.empty()) throw std::invalid_argument("cvar: empty sample");
  if (!(alpha >= 0.0 && alpha < 1.0)) throw std::invalid_argument("cvar: alpha must lie in [0,1)");
  const auto top = top_indices(values, tail_count(values.size(), alpha));
  double sum = 0.0;
  for (auto i : top) sum += values[i];
  return sum / static_cast<double>(top.size());
}

double separation_stat(std::span<const double> regrets, std::span<const double> seps, double alpha) {
  if (regrets.size() != seps.size()) throw std::invalid_argument("separation_stat: length mismatch");
  if (regrets.empty()) throw std::invalid_argument("separation_stat: empty sample");
  const auto top = top_indices(regrets, tail_count(regrets.size(), alpha));
  double sum = 0.0;
  for (auto i : top) sum += seps[i];
  return sum / static_cast<double>(top.size());
}

std::size_t RegretSurface::policy_index(PolicyKind kind) const {
  for (std::size_t p = 0; p < policies.size(); ++p) {
    if (policies[p] == kind) return p;
  }
  throw std::out_of_range("surface has no policy '" + std::string(policy_id(kind)) + "'");
}

namespace detail {

RegretSurface empty_surface(const ExperimentConfig& config, std::span<const Pmf> dists) {
  RegretSurface s;
  s.policies = config.policies;
  s.checkpoints = resolved_checkpoints(config);
  s.alphas = config.alphas;
  s.K = dists.size();
  const double beta = config.cost().beta();
  for (const Pmf& f : dists) {
    s.separations.push_back(separation(f, beta));
    s.kappas.push_back(kappa(f, beta));
  }
  s.regrets.assign(s.policies.size() * s.K * s.checkpoints.size(), 0.0);
  return s;
}

void finalize_surface(RegretSurface& s) {
  const std::size_t C = s.checkpoints.size();
  const std::size_t A = s.alphas.size();
  s.R.assign(s.policies.size() * C * A, 0.0);
  s.D.assign(s.policies.size() * C * A, 0.0);
  std::vector<double> column(s.K);
  for (std::size_t p = 0; p < s.policies.size(); ++p) {
    for (std::size_t c = 0; c < C; ++c) {
      for (std::size_t k = 0; k < s.K; ++k) column[k] = s.mean_regret(p, k, c);
      for (std::size_t a = 0; a < A; ++a) {
        s.R[(p * C + c) * A + a] = cvar(column, s.alphas[a]);
        s.D[(p * C + c) * A + a] = separation_stat(column, s.separations, s.alphas[a]);
      }
    }
  }
}

}  // namespace detail

RegretSurface run_experiment(const ExperimentConfig& config) {
  validate(config);
  const CostParams params = config.cost();
  const auto schedule = StepSizeSchedule::from(config.dbar, params);
  const std::vector<Pmf> dists = sample_distributions(config);
  RegretSurface surface = detail::empty_surface(config, dists);
  const std::size_t P = surface.policies.size();
  const std::size_t C = surface.checkpoints.size();
  const auto K = static_cast<std::int64_t>(dists.size());

  int threads = config.threads;
#if defined(_OPENMP)
  if (threads <= 0) threads = omp_get_max_threads();
#else
  threads = 1;
#endif
  (void)threads;

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t k = 0; k < K; ++k) {
    const Pmf& pmf = dists[static_cast<std::size_t>(k)];
    const Level oracle = oracle_policy(pmf, params);
    std::vector<double> cell(P * C, 0.0);
    for (std::int64_t l = 0; l < config.L; ++l) {
      const auto demand = demand_path(config, pmf, k, l);
      for (std::size_t p = 0; p < P; ++p) {
        const PolicyKind kind = surface.policies[p];
        Stream rng = policy_stream(config, kind, k, l);
        PolicyState state = kind == PolicyKind::Oracle ? make_oracle_state(pmf, params)
                                                       : make_policy_state(kind, config.dbar);
        detail::accumulate_cell(params, schedule, oracle, std::move(state), demand, rng, surface.checkpoints,
                                std::span<double>(cell.data() + p * C, C));
      }
    }
    for (std::size_t p = 0; p < P; ++p) {
      for (std::size_t c = 0; c < C; ++c) {
        surface.regrets[(p * surface.K + static_cast<std::size_t>(k)) * C + c] =
            cell[p * C + c] / static_cast<double>(config.L);
      }
    }
  }
  detail::finalize_surface(surface);
  return surface;
}

}  // namespace invlearn
