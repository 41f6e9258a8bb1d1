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

#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "invlearn/bounds.hpp"
#include "invlearn/harness.hpp"

using namespace invlearn;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.dbar = 6;
  c.K = 7;
  c.L = 3;
  c.T = 200;
  c.alphas = {0.0, 0.5, 0.9};
  c.policies = {PolicyKind::Newsvendor, PolicyKind::StochasticApprox, PolicyKind::UpDown, PolicyKind::Oracle};
  c.seed = 99;
  return c;
}

bool bitwise_equal(const RegretSurface& a, const RegretSurface& b) {
  return a.policies == b.policies && a.checkpoints == b.checkpoints && a.alphas == b.alphas && a.K == b.K &&
         a.separations == b.separations && a.kappas == b.kappas && a.regrets == b.regrets && a.R == b.R &&
         a.D == b.D;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("tail count") {
  CHECK(tail_count(1000, 0.95) == 50);
  CHECK(tail_count(1000, 0.999) == 1);
  CHECK(tail_count(1000, 0.0) == 1000);
  CHECK(tail_count(200, 0.99) == 2);
  CHECK(tail_count(7, 0.5) == 4);
  CHECK(tail_count(3, 0.9) == 1);
}

TEST_CASE("cvar") {
  const std::vector<double> v{1, 2, 3, 4};
  CHECK(cvar(v, 0.0) == 2.5);
  CHECK(cvar(v, 0.75) == 4.0);
  CHECK(cvar(v, 0.5) == 3.5);
  std::vector<double> big(1000);
  for (std::size_t i = 0; i < big.size(); ++i) big[i] = static_cast<double>((i * 7919) % 1000);
  CHECK(cvar(big, 0.95) == doctest::Approx((950.0 + 999.0) / 2));
  CHECK(cvar(big, 0.999) == 999.0);
  CHECK_THROWS_AS(cvar(std::vector<double>{}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(cvar(v, 1.0), std::invalid_argument);

  Stream rng(51);
  std::vector<double> r(137);
  for (int rep = 0; rep < 100; ++rep) {
    double sum = 0.0;
    for (auto& x : r) sum += (x = rng.uniform() * 1e3);
    CHECK(cvar(r, 0.0) == sum / static_cast<double>(r.size()));
  }
  for (auto& x : r) x = rng.uniform();
  double prev = -1.0;
  for (double a = 0.0; a < 1.0; a += 0.01) {
    const double c = cvar(r, a);
    CHECK(c >= prev);
    prev = c;
  }
}

TEST_CASE("separation statistic") {
  CHECK(separation_stat(std::vector<double>{1, 2}, std::vector<double>{0.4, 0.1}, 0.5) == 0.1);
  CHECK(separation_stat(std::vector<double>{1, 2}, std::vector<double>{0.4, 0.1}, 0.0) == doctest::Approx(0.25));
  // Ties pick the lowest indices.
  CHECK(separation_stat(std::vector<double>{5, 5, 5, 5}, std::vector<double>{0.1, 0.2, 0.3, 0.4}, 0.5) ==
        doctest::Approx(0.15));
  CHECK_THROWS_AS(separation_stat(std::vector<double>{1}, std::vector<double>{1, 2}, 0.0), std::invalid_argument);
}

TEST_CASE("simulate path examples") {
  const CostParams params(5, 5);
  Stream demand_rng(52);
  const Pmf f = gen_uniform_simplex(demand_rng, 10);
  std::vector<Level> demand(300);
  sample_path(cdf(f), demand_rng, demand);
  Stream rng(53);
  const PathResult oracle = simulate_path(f, params, PolicyKind::Oracle, 300, rng, demand);
  for (double r : oracle.regret_trace) CHECK(r == 0.0);

  const std::vector<Level> threes(50, 3);
  const PathResult point = simulate_path(Pmf::point_mass(8, 3), params, PolicyKind::Newsvendor, 50, rng, threes);
  for (double r : point.regret_trace) CHECK(r == 15.0);

  CHECK_THROWS_AS(simulate_path(f, params, PolicyKind::Newsvendor, 299, rng, demand), std::invalid_argument);

  for (auto kind : {PolicyKind::Newsvendor, PolicyKind::StochasticApprox, PolicyKind::UpDown}) {
    Stream a(54);
    Stream b(54);
    const PathResult x = simulate_path(f, params, kind, 300, a, demand);
    const PathResult y = simulate_path(f, params, kind, 300, b, demand);
    CHECK(x.regret_trace == y.regret_trace);
    CHECK(x.order_trace == y.order_trace);
  }
}

TEST_CASE("serial reference and OpenMP kernel agree bitwise") {
  for (double gamma : {0.0, 0.9}) {
    for (double beta : {0.2, 0.5, 0.85}) {
      ExperimentConfig c = small_config();
      c.gamma_insep = gamma;
      c.beta = beta;
      const RegretSurface serial = run_experiment_serial(c);
      const RegretSurface kernel = run_experiment(c);
      CHECK(bitwise_equal(serial, kernel));
      c.threads = 1;
      const RegretSurface one = run_experiment(c);
      c.threads = 3;
      const RegretSurface three = run_experiment(c);
      CHECK(bitwise_equal(one, three));
      CHECK(bitwise_equal(one, kernel));
    }
  }
}

TEST_CASE("degenerate experiment reduces to one path") {
  ExperimentConfig c = small_config();
  c.K = 1;
  c.L = 1;
  c.policies = {PolicyKind::StochasticApprox};
  c.checkpoints = {1, 10, 57, 200};
  const RegretSurface s = run_experiment(c);
  const Pmf f = sample_distribution(c, 0);
  const auto demand = demand_path(c, f, 0, 0);
  Stream rng = policy_stream(c, PolicyKind::StochasticApprox, 0, 0);
  const PathResult r = simulate_path(f, c.cost(), PolicyKind::StochasticApprox, c.T, rng, demand);
  for (std::size_t i = 0; i < c.checkpoints.size(); ++i) {
    const double expected = r.regret_trace[static_cast<std::size_t>(c.checkpoints[i] - 1)];
    CHECK(s.mean_regret(0, 0, i) == expected);
    for (std::size_t a = 0; a < c.alphas.size(); ++a) CHECK(s.cvar_at(0, i, a) == expected);
  }
}

TEST_CASE("surface statistics") {
  const ExperimentConfig c = small_config();
  const RegretSurface s = run_experiment(c);
  CHECK(s.checkpoints == std::vector<std::int64_t>{1, 4, 9, 16, 25, 36, 49, 64, 81, 100, 121, 144, 169, 196});
  const double slack = c.L * c.h_plus_b * c.dbar;
  for (std::size_t p = 0; p < s.policies.size(); ++p) {
    for (std::size_t ci = 0; ci < s.checkpoints.size(); ++ci) {
      double mean = 0.0;
      double sep = 0.0;
      for (std::size_t k = 0; k < s.K; ++k) {
        const double r = s.mean_regret(p, k, ci);
        CHECK(std::isfinite(r));
        CHECK(r >= s.mean_regret(p, k, 0) - slack);
        mean += r;
        sep += s.separations[k];
      }
      CHECK(s.cvar_at(p, ci, 0) == mean / static_cast<double>(s.K));
      CHECK(s.sep_at(p, ci, 0) == doctest::Approx(sep / s.K).epsilon(1e-12));
      for (std::size_t a = 1; a < s.alphas.size(); ++a) CHECK(s.cvar_at(p, ci, a) >= s.cvar_at(p, ci, a - 1));
    }
  }
  const std::size_t oracle = s.policy_index(PolicyKind::Oracle);
  for (std::size_t ci = 0; ci < s.checkpoints.size(); ++ci) CHECK(s.cvar_at(oracle, ci, 2) == 0.0);
  for (std::size_t k = 0; k < s.K; ++k) {
    const Pmf f = sample_distribution(c, static_cast<std::int64_t>(k));
    CHECK(s.separations[k] == separation(f, c.cost().beta()));
    CHECK(s.kappas[k] == kappa(f, c.cost().beta()));
  }
}

TEST_CASE("common random numbers") {
  const ExperimentConfig c = small_config();
  const Pmf f = sample_distribution(c, 2);
  const auto a = demand_path(c, f, 2, 1);
  const auto b = demand_path(c, f, 2, 1);
  CHECK(path_checksum(a) == path_checksum(b));
  CHECK(path_checksum(a) != path_checksum(demand_path(c, f, 2, 2)));
  CHECK(path_checksum(a) != path_checksum(demand_path(c, f, 3, 1)));
  std::set<std::uint64_t> seen;
  for (auto kind : {PolicyKind::Newsvendor, PolicyKind::StochasticApprox, PolicyKind::UpDown}) {
    seen.insert(policy_stream(c, kind, 2, 1).bits());
  }
  CHECK(seen.size() == 3);
}

TEST_CASE("alpha zero is the plain mean") {
  ExperimentConfig c = small_config();
  c.alphas = {0.0};
  const RegretSurface s = run_experiment(c);
  for (std::size_t p = 0; p < s.policies.size(); ++p) {
    double sum = 0.0;
    for (std::size_t k = 0; k < s.K; ++k) sum += s.mean_regret(p, k, s.checkpoints.size() - 1);
    CHECK(s.cvar_at(p, s.checkpoints.size() - 1, 0) == sum / static_cast<double>(s.K));
  }
}

TEST_CASE("config validation") {
  auto bad = [](auto mutate, const char* key) {
    ExperimentConfig c;
    mutate(c);
    try {
      validate(c);
      FAIL("no error for " << key);
    } catch (const ConfigError& e) {
      CHECK(e.key() == key);
    }
  };
  CHECK_NOTHROW(validate(ExperimentConfig{}));
  bad([](ExperimentConfig& c) { c.dbar = 0; }, "dbar");
  bad([](ExperimentConfig& c) { c.h_plus_b = -1; }, "h_plus_b");
  bad([](ExperimentConfig& c) { c.beta = 1.0; }, "beta");
  bad([](ExperimentConfig& c) { c.K = 0; }, "K");
  bad([](ExperimentConfig& c) { c.L = 0; }, "L");
  bad([](ExperimentConfig& c) { c.T = 0; }, "T");
  bad([](ExperimentConfig& c) { c.alphas = {}; }, "alphas");
  bad([](ExperimentConfig& c) { c.alphas = {1.0}; }, "alphas");
  bad([](ExperimentConfig& c) { c.gamma_insep = 1.0; }, "gamma_insep");
  bad([](ExperimentConfig& c) { c.policies = {}; }, "policies");
  bad([](ExperimentConfig& c) { c.policies = {PolicyKind::UpDown, PolicyKind::UpDown}; }, "policies");
  bad([](ExperimentConfig& c) { c.checkpoints = {5, 3}; }, "checkpoints");
  bad([](ExperimentConfig& c) { c.checkpoints = {20000}; }, "checkpoints");
  bad([](ExperimentConfig& c) { c.threads = -2; }, "threads");
}

}  // TEST_SUITE
