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
#include <span>
#include <string>
#include <vector>

#include "invlearn/rng.hpp"

namespace invlearn {

/// A demand (or inventory) level in {0, ..., dbar}.
using Level = int;

/// Probability mass function on {0, ..., dbar}.
///
/// Construction validates membership in the simplex (entries >= 0, sum within
/// 1e-9 of one) and renormalises, so accessors always see a proper pmf.
class Pmf {
 public:
  Pmf(Level dbar, std::vector<double> weights);

  Level dbar() const noexcept { return dbar_; }
  std::span<const double> probs() const noexcept { return probs_; }
  double operator[](Level d) const { return probs_.at(static_cast<std::size_t>(d)); }

  /// Mass at the top level dbar.
  double eps_f() const noexcept { return probs_.back(); }

  static Pmf point_mass(Level dbar, Level at);
  static Pmf uniform(Level dbar);

  friend bool operator==(const Pmf&, const Pmf&) = default;

 private:
  Level dbar_;
  std::vector<double> probs_;
};

/// Cumulative distribution; cum[dbar] is exactly 1.
struct Cdf {
  Level dbar = 0;
  std::vector<double> cum;
};

/// Per-level demand counts, the sufficient statistic of the empirical pmf.
struct EmpiricalCounts {
  Level dbar = 0;
  std::vector<std::int64_t> counts;
  std::int64_t n = 0;

  explicit EmpiricalCounts(Level dbar_in)
      : dbar(dbar_in), counts(static_cast<std::size_t>(dbar_in) + 1, 0) {}
};

Pmf pmf_new(Level dbar, std::vector<double> weights);

Cdf cdf(const Pmf& pmf);

/// Smallest d with cum[d] >= beta.
Level quantile(const Cdf& cdf, double beta);

/// Inverse-cdf sampling: the unique d with cum[d-1] <= u < cum[d], cum[-1] = 0.
Level sample(const Cdf& cdf, double u);

/// Fills `out` with i.i.d. draws from `cdf`, one uniform per entry.
void sample_path(const Cdf& cdf, Stream& rng, std::span<Level> out);

EmpiricalCounts& empirical_update(EmpiricalCounts& counts, Level d);
Pmf empirical_pmf(const EmpiricalCounts& counts);

/// Empirical cdf with cum[d] = (counts[0] + ... + counts[d]) / n, each entry a
/// single correctly rounded division.
Cdf empirical_cdf(const EmpiricalCounts& counts);

/// d̄ uniforms, sorted, strictly inside (0, 1) and pairwise distinct. Ties
/// (including an exact 0) redraw the whole tuple.
std::vector<double> draw_sorted_uniforms(Stream& rng, Level dbar);

/// Pmf of the spacings of eta_0 = 0 < eta_1 < ... < eta_dbar < eta_{dbar+1} = 1.
Pmf spacings_pmf(std::span<const double> interior_points);

/// Uniform draw from the simplex via uniform spacings.
Pmf gen_uniform_simplex(Stream& rng, Level dbar);

/// Squeezes the sorted points toward beta by the inseparability index gamma.
///
/// With xi_(d-1) < beta < xi_(d), points below beta are scaled by
/// (xi_(d-1) + gamma (beta - xi_(d-1))) / xi_(d-1) and points above are
/// reflected-scaled about 1 by (1 - xi_(d) + gamma (xi_(d) - beta)) / (1 - xi_(d)).
/// An empty block is left alone. Returns the transformed points.
std::vector<double> squeeze_toward(std::span<const double> sorted_xi, double beta, double gamma);

/// Random pmf whose cdf points straddle beta at (1 - gamma) times the distance
/// of the underlying uniform draw. gamma = 0 reproduces gen_uniform_simplex.
Pmf gen_inseparable(Stream& rng, Level dbar, double beta, double gamma);

/// One row of d̄+1 probabilities, 17 significant digits, comma separated.
std::string to_csv_row(const Pmf& pmf);
std::string to_json(const Pmf& pmf);
/// Parses "p0,p1,..." or a JSON array "[p0, p1, ...]".
Pmf pmf_from_text(const std::string& text);

}  // namespace invlearn
