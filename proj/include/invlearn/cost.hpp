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

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "invlearn/demand.hpp"

namespace invlearn {

/// Holding rate h and backlog (or effective lost-sales) rate b, both > 0.
/// The critical quantile b / (h + b) is always recomputed from the two rates.
class CostParams {
 public:
  CostParams(double h, double b);

  /// Splits h + b at the critical quantile: b = beta * (h + b), h = total - b.
  static CostParams from_beta(double h_plus_b, double beta);

  double h() const noexcept { return h_; }
  double b() const noexcept { return b_; }
  double beta() const noexcept { return b_ / (h_ + b_); }
  double max_rate() const noexcept { return h_ > b_ ? h_ : b_; }

 private:
  double h_;
  double b_;
};

/// h (y - d)^+ + b (d - y)^+.
inline double stage_cost(const CostParams& params, Level y, Level d) noexcept {
  return y >= d ? params.h() * (y - d) : params.b() * (d - y);
}

/// Expected one-period cost Q_f(y), evaluated through the cdf:
///   h * sum_{d<y} F(d) + b * sum_{d=y}^{dbar-1} (1 - F(d)).
double one_period_cost(const CostParams& params, const Cdf& cdf, Level y);
double one_period_cost(const CostParams& params, const Pmf& pmf, Level y);

/// Newsvendor level (the beta-quantile) and its cost Q*_f.
std::pair<Level, double> optimal_order(const CostParams& params, const Pmf& pmf);

/// Realised costs of one policy against the repeated-newsvendor oracle on the
/// same demand path. All traces are cumulative except the two order traces.
struct PathResult {
  std::vector<double> policy_cost_trace;
  std::vector<double> oracle_cost_trace;
  std::vector<double> regret_trace;
  std::vector<Level> target_trace;  // ŷ_t
  std::vector<Level> order_trace;   // y_t
};

/// Builds a PathResult from a demand path and a policy's order-up-to levels.
/// The oracle orders y*_{f,beta} in every period.
PathResult regret_trace(const CostParams& params, const Pmf& pmf, std::span<const Level> demand_path,
                        std::span<const Level> order_path);

/// Expected-cost split of the regret of a given (ŷ, y) path:
///   first  = sum_t Q(ŷ_t) - T Q*      (learning)
///   second = sum_t Q(y_t) - Q(ŷ_t)    (carry-over)
std::pair<double, double> decompose_regret(const CostParams& params, const Pmf& pmf,
                                           std::span<const Level> yhat_path,
                                           std::span<const Level> y_path);

/// CSV: period,policy_cost,oracle_cost,regret (period is 1-based).
std::string path_csv(const PathResult& result);

}  // namespace invlearn
