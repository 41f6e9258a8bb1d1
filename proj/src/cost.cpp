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

#include "invlearn/cost.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "invlearn/format.hpp"

namespace invlearn {

CostParams::CostParams(double h, double b) : h_(h), b_(b) {
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("h must be positive, got " + format_real(h));
  if (!(b > 0.0) || !std::isfinite(b)) throw std::invalid_argument("b must be positive, got " + format_real(b));
}

CostParams CostParams::from_beta(double h_plus_b, double beta) {
  if (!(h_plus_b > 0.0)) throw std::invalid_argument("h_plus_b must be positive, got " + format_real(h_plus_b));
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("beta must lie in (0,1), got " + format_real(beta));
  const double b = beta * h_plus_b;
  return CostParams(h_plus_b - b, b);
}

double one_period_cost(const CostParams& params, const Cdf& cdf, Level y) {
  if (y < 0 || y > cdf.dbar) throw std::out_of_range("one_period_cost: level out of range");
  double below = 0.0;
  for (Level d = 0; d < y; ++d) below += cdf.cum[static_cast<std::size_t>(d)];
  double above = 0.0;
  for (Level d = y; d < cdf.dbar; ++d) above += 1.0 - cdf.cum[static_cast<std::size_t>(d)];
  return params.h() * below + params.b() * above;
}

double one_period_cost(const CostParams& params, const Pmf& pmf, Level y) {
  return one_period_cost(params, cdf(pmf), y);
}

std::pair<Level, double> optimal_order(const CostParams& params, const Pmf& pmf) {
  const Cdf c = cdf(pmf);
  const Level y = quantile(c, params.beta());
  return {y, one_period_cost(params, c, y)};
}

PathResult regret_trace(const CostParams& params, const Pmf& pmf, std::span<const Level> demand_path,
                        std::span<const Level> order_path) {
  if (demand_path.size() != order_path.size()) {
    throw std::invalid_argument("regret_trace: demand path has " + std::to_string(demand_path.size()) +
                                " periods, order path " + std::to_string(order_path.size()));
  }
  const Level oracle = quantile(cdf(pmf), params.beta());
  const std::size_t T = demand_path.size();
  PathResult out;
  out.policy_cost_trace.resize(T);
  out.oracle_cost_trace.resize(T);
  out.regret_trace.resize(T);
  out.order_trace.assign(order_path.begin(), order_path.end());
  double policy = 0.0;
  double bench = 0.0;
  for (std::size_t t = 0; t < T; ++t) {
    policy += stage_cost(params, order_path[t], demand_path[t]);
    bench += stage_cost(params, oracle, demand_path[t]);
    out.policy_cost_trace[t] = policy;
    out.oracle_cost_trace[t] = bench;
    out.regret_trace[t] = policy - bench;
  }
  return out;
}

std::pair<double, double> decompose_regret(const CostParams& params, const Pmf& pmf,
                                           std::span<const Level> yhat_path,
                                           std::span<const Level> y_path) {
  if (yhat_path.size() != y_path.size()) throw std::invalid_argument("decompose_regret: length mismatch");
  const Cdf c = cdf(pmf);
  std::vector<double> q(c.cum.size());
  for (Level y = 0; y <= c.dbar; ++y) q[static_cast<std::size_t>(y)] = one_period_cost(params, c, y);
  // Q* as the minimum of the table, so every learning term is >= 0 exactly.
  const double best = *std::min_element(q.begin(), q.end());
  double learning = 0.0;
  double carry = 0.0;
  for (std::size_t t = 0; t < y_path.size(); ++t) {
    const double qhat = q.at(static_cast<std::size_t>(yhat_path[t]));
    learning += qhat - best;
    carry += q.at(static_cast<std::size_t>(y_path[t])) - qhat;
  }
  return {learning, carry};
}

std::string path_csv(const PathResult& result) {
  std::string out = "period,policy_cost,oracle_cost,regret\n";
  for (std::size_t t = 0; t < result.regret_trace.size(); ++t) {
    out += std::to_string(t + 1);
    out += ',';
    out += format_real(result.policy_cost_trace[t]);
    out += ',';
    out += format_real(result.oracle_cost_trace[t]);
    out += ',';
    out += format_real(result.regret_trace[t]);
    out += '\n';
  }
  return out;
}

}  // namespace invlearn
