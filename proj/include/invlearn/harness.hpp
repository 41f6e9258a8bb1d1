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

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "invlearn/cost.hpp"
#include "invlearn/demand.hpp"
#include "invlearn/policy.hpp"
#include "invlearn/rng.hpp"

namespace invlearn {

/// Invalid experiment configuration. The message starts with the offending key.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(const std::string& key, const std::string& what)
      : std::invalid_argument(key + ": " + what), key_(key) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

struct ExperimentConfig {
  Level dbar = 20;
  double h_plus_b = 10.0;
  double beta = 0.5;
  std::int64_t K = 1000;  // sampled distributions
  std::int64_t L = 100;   // demand paths per distribution
  std::int64_t T = 10000; // horizon
  std::vector<double> alphas{0.0, 0.95, 0.999};
  double gamma_insep = 0.0;
  std::vector<PolicyKind> policies{PolicyKind::Newsvendor, PolicyKind::StochasticApprox};
  std::uint64_t seed = 1;
  std::vector<std::int64_t> checkpoints;  // empty: 1^2, 2^2, ..., floor(sqrt(T))^2
  int threads = 0;                        // 0: OpenMP default

  CostParams cost() const { return CostParams::from_beta(h_plus_b, beta); }
};

/// Throws ConfigError naming the first invalid field.
void validate(const ExperimentConfig& config);

/// The checkpoint list actually used: the configured one, or the squares up to T.
std::vector<std::int64_t> resolved_checkpoints(const ExperimentConfig& config);

/// Distribution k (0-based) of the experiment, drawn from its own stream.
Pmf sample_distribution(const ExperimentConfig& config, std::int64_t k);
std::vector<Pmf> sample_distributions(const ExperimentConfig& config);

/// Demand path of cell (k, l); one uniform per period from the cell's demand stream.
std::vector<Level> demand_path(const ExperimentConfig& config, const Pmf& pmf, std::int64_t k,
                               std::int64_t l);

/// Stream for policy-internal randomisation in cell (k, l).
Stream policy_stream(const ExperimentConfig& config, PolicyKind kind, std::int64_t k, std::int64_t l);

/// FNV-1a over the levels; used to check common random numbers.
std::uint64_t path_checksum(std::span<const Level> path);

/// Runs one policy over a precomputed demand path and prices it against the
/// oracle on the same path. Full per-period traces.
PathResult simulate_path(const Pmf& pmf, const CostParams& params, PolicyKind kind, std::int64_t T,
                         Stream& path_rng, std::span<const Level> demand);

/// Mean of the ceil((1 - alpha) K) largest values, ties broken by index.
double cvar(std::span<const double> values, double alpha);

/// Mean separation over the indices of the ceil((1 - alpha) K) largest regrets.
double separation_stat(std::span<const double> regrets, std::span<const double> seps, double alpha);

/// ceil((1 - alpha) K), with (1 - alpha) K first snapped to a nearby integer
/// (within 1e-9 K) so that binary rounding of alpha does not add one.
std::size_t tail_count(std::size_t K, double alpha);

/// Regret statistics of one experiment.
///
/// mean_regret(p, k, c) is the L-path average regret of policy p on
/// distribution k at checkpoint c; R and D are the tail statistics over k.
struct RegretSurface {
  std::vector<PolicyKind> policies;
  std::vector<std::int64_t> checkpoints;
  std::vector<double> alphas;
  std::size_t K = 0;
  std::vector<double> separations;  // per distribution
  std::vector<double> kappas;       // per distribution
  std::vector<double> regrets;      // [p][k][c]
  std::vector<double> R;            // [p][c][a]
  std::vector<double> D;            // [p][c][a]

  double mean_regret(std::size_t p, std::size_t k, std::size_t c) const {
    return regrets[(p * K + k) * checkpoints.size() + c];
  }
  double cvar_at(std::size_t p, std::size_t c, std::size_t a) const {
    return R[(p * checkpoints.size() + c) * alphas.size() + a];
  }
  double sep_at(std::size_t p, std::size_t c, std::size_t a) const {
    return D[(p * checkpoints.size() + c) * alphas.size() + a];
  }
  std::size_t policy_index(PolicyKind kind) const;
};

/// OpenMP kernel: distributions are distributed across threads, each thread
/// running all L paths of its distribution and summing them in path order. The
/// result does not depend on the thread count.
RegretSurface run_experiment(const ExperimentConfig& config);

/// Serial reference built from simulate_path; bitwise equal to run_experiment.
RegretSurface run_experiment_serial(const ExperimentConfig& config);

}  // namespace invlearn
