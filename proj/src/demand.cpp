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

#include "invlearn/demand.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "invlearn/format.hpp"
#include "json.hpp"

namespace invlearn {

namespace {

constexpr double kSumTolerance = 1e-9;

void check_level(Level dbar, Level d, const char* what) {
  if (d < 0 || d > dbar) {
    throw std::out_of_range(std::string(what) + ": level " + std::to_string(d) +
                            " outside {0.." + std::to_string(dbar) + "}");
  }
}

}  // namespace

Pmf::Pmf(Level dbar, std::vector<double> weights) : dbar_(dbar), probs_(std::move(weights)) {
  if (dbar_ < 1) throw std::invalid_argument("pmf: dbar must be positive");
  if (probs_.size() != static_cast<std::size_t>(dbar_) + 1) {
    throw std::invalid_argument("pmf: expected " + std::to_string(dbar_ + 1) + " weights, got " +
                                std::to_string(probs_.size()));
  }
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw std::invalid_argument("pmf: negative or non-finite weight " + format_real(p));
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw std::invalid_argument("pmf: weights sum to " + format_real(sum) + ", not 1");
  }
  // Sums already within accumulated rounding are left alone, which keeps
  // construction idempotent (a serialised pmf parses back bit-for-bit).
  const double rounding = 64.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(probs_.size());
  if (std::abs(sum - 1.0) > rounding) {
    for (double& p : probs_) p /= sum;
  }
}

Pmf Pmf::point_mass(Level dbar, Level at) {
  check_level(dbar, at, "point_mass");
  std::vector<double> w(static_cast<std::size_t>(dbar) + 1, 0.0);
  w[static_cast<std::size_t>(at)] = 1.0;
  return Pmf(dbar, std::move(w));
}

Pmf Pmf::uniform(Level dbar) {
  return Pmf(dbar, std::vector<double>(static_cast<std::size_t>(dbar) + 1, 1.0 / (dbar + 1)));
}

Pmf pmf_new(Level dbar, std::vector<double> weights) { return Pmf(dbar, std::move(weights)); }

Cdf cdf(const Pmf& pmf) {
  Cdf out{pmf.dbar(), std::vector<double>(pmf.probs().size())};
  double acc = 0.0;
  for (std::size_t d = 0; d < out.cum.size(); ++d) {
    acc += pmf.probs()[d];
    out.cum[d] = std::min(acc, 1.0);
  }
  out.cum.back() = 1.0;
  return out;
}

Level quantile(const Cdf& cdf, double beta) {
  auto it = std::lower_bound(cdf.cum.begin(), cdf.cum.end(), beta);
  if (it == cdf.cum.end()) --it;
  return static_cast<Level>(it - cdf.cum.begin());
}

Level sample(const Cdf& cdf, double u) {
  auto it = std::upper_bound(cdf.cum.begin(), cdf.cum.end(), u);
  if (it == cdf.cum.end()) --it;
  return static_cast<Level>(it - cdf.cum.begin());
}

void sample_path(const Cdf& cdf, Stream& rng, std::span<Level> out) {
  for (Level& d : out) d = sample(cdf, rng.uniform());
}

EmpiricalCounts& empirical_update(EmpiricalCounts& counts, Level d) {
  check_level(counts.dbar, d, "empirical_update");
  ++counts.counts[static_cast<std::size_t>(d)];
  ++counts.n;
  return counts;
}

Pmf empirical_pmf(const EmpiricalCounts& counts) {
  if (counts.n == 0) throw std::logic_error("empirical_pmf: no observations");
  std::vector<double> w(counts.counts.size());
  const auto n = static_cast<double>(counts.n);
  for (std::size_t d = 0; d < w.size(); ++d) w[d] = static_cast<double>(counts.counts[d]) / n;
  return Pmf(counts.dbar, std::move(w));
}

Cdf empirical_cdf(const EmpiricalCounts& counts) {
  if (counts.n == 0) throw std::logic_error("empirical_cdf: no observations");
  Cdf out{counts.dbar, std::vector<double>(counts.counts.size())};
  const auto n = static_cast<double>(counts.n);
  std::int64_t acc = 0;
  for (std::size_t d = 0; d < out.cum.size(); ++d) {
    acc += counts.counts[d];
    out.cum[d] = static_cast<double>(acc) / n;
  }
  return out;
}

std::vector<double> draw_sorted_uniforms(Stream& rng, Level dbar) {
  std::vector<double> xi(static_cast<std::size_t>(dbar));
  for (;;) {
    for (double& x : xi) x = rng.uniform();
    std::sort(xi.begin(), xi.end());
    bool distinct = xi.empty() || xi.front() > 0.0;
    for (std::size_t i = 1; distinct && i < xi.size(); ++i) distinct = xi[i - 1] < xi[i];
    if (distinct) return xi;
  }
}

Pmf spacings_pmf(std::span<const double> interior_points) {
  const auto dbar = static_cast<Level>(interior_points.size());
  std::vector<double> f(interior_points.size() + 1);
  double prev = 0.0;
  for (std::size_t i = 0; i < interior_points.size(); ++i) {
    f[i] = interior_points[i] - prev;
    prev = interior_points[i];
  }
  f.back() = 1.0 - prev;
  return Pmf(dbar, std::move(f));
}

Pmf gen_uniform_simplex(Stream& rng, Level dbar) {
  const auto xi = draw_sorted_uniforms(rng, dbar);
  return spacings_pmf(xi);
}

std::vector<double> squeeze_toward(std::span<const double> sorted_xi, double beta, double gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("squeeze_toward: gamma must lie in [0,1), got " + format_real(gamma));
  }
  std::vector<double> eta(sorted_xi.begin(), sorted_xi.end());
  // 1 - 1 * (1 - x) is not always x in floating point.
  if (gamma == 0.0) return eta;
  // First index whose point lies above beta.
  const auto above = static_cast<std::size_t>(
      std::upper_bound(eta.begin(), eta.end(), beta) - eta.begin());
  if (above > 0) {
    const double lo = sorted_xi[above - 1];
    const double scale = (lo + gamma * (beta - lo)) / lo;
    for (std::size_t i = 0; i < above; ++i) eta[i] = scale * sorted_xi[i];
  }
  if (above < eta.size()) {
    const double hi = sorted_xi[above];
    const double scale = (1.0 - hi + gamma * (hi - beta)) / (1.0 - hi);
    for (std::size_t i = above; i < eta.size(); ++i) eta[i] = 1.0 - scale * (1.0 - sorted_xi[i]);
  }
  return eta;
}

Pmf gen_inseparable(Stream& rng, Level dbar, double beta, double gamma) {
  for (;;) {
    const auto xi = draw_sorted_uniforms(rng, dbar);
    if (std::find(xi.begin(), xi.end(), beta) != xi.end()) continue;
    return spacings_pmf(squeeze_toward(xi, beta, gamma));
  }
}

std::string to_csv_row(const Pmf& pmf) {
  std::string out;
  for (std::size_t d = 0; d < pmf.probs().size(); ++d) {
    if (d) out += ',';
    out += format_real(pmf.probs()[d]);
  }
  return out;
}

std::string to_json(const Pmf& pmf) {
  return nlohmann::json(std::vector<double>(pmf.probs().begin(), pmf.probs().end())).dump();
}

Pmf pmf_from_text(const std::string& text) {
  std::vector<double> w;
  const auto first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && text[first] == '[') {
    w = nlohmann::json::parse(text).get<std::vector<double>>();
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (item.find_first_not_of(" \t", used) != std::string::npos) {
        throw std::invalid_argument("pmf: cannot parse '" + item + "'");
      }
      w.push_back(v);
    }
  }
  if (w.size() < 2) throw std::invalid_argument("pmf: need at least two probabilities");
  const auto dbar = static_cast<Level>(w.size()) - 1;
  return Pmf(dbar, std::move(w));
}

}  // namespace invlearn
