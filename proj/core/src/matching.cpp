// Copyright 2026 The causal-rules Authors
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
#include <deque>
#include <iterator>
#include <map>
#include <stdexcept>

#include "causal_rules/estimators.hpp"
#include "causal_rules/random.hpp"
#include "context_rows.hpp"

namespace causal_rules {

namespace {

PropensityMatch random_pairs(const detail::ContextRows& cr, std::uint64_t seed) {
  std::vector<std::size_t> treated;
  std::vector<std::size_t> untreated;
  for (std::size_t r = 0; r < cr.rows.size(); ++r) {
    (cr.treated[r] ? treated : untreated).push_back(cr.rows[r]);
  }
  Rng rng(seed);
  rng.shuffle(std::span<std::size_t>(treated));
  rng.shuffle(std::span<std::size_t>(untreated));
  PropensityMatch out;
  out.degenerate_propensity = true;
  const std::size_t k = std::min(treated.size(), untreated.size());
  out.pairs.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.pairs.emplace_back(treated[i], untreated[i]);
  out.unmatched_treated = treated.size() - k;
  return out;
}

double sample_sd(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double mean = 0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

PropensityMatch match_on_propensity(const EstimationContext& ctx, double caliper,
                                    std::uint64_t seed, const GlmOptions& glm) {
  if (!(caliper >= 0)) throw std::invalid_argument("caliper must be non-negative");
  const detail::ContextRows cr = detail::gather_rows(ctx);
  const ItemSet predictors = ctx.classification.treatment_predictors();
  if (predictors.empty()) return random_pairs(cr, seed);

  const std::size_t k = predictors.size();
  const auto codes = detail::pattern_codes(ctx.data(), cr.rows, predictors);
  const auto cells = detail::tabulate(cr, codes);

  // Propensity model x ~ Z + U on covariate patterns.
  const auto g = static_cast<Eigen::Index>(cells.size());
  Eigen::MatrixXd design(g, static_cast<Eigen::Index>(k));
  Eigen::VectorXd trials(g);
  Eigen::VectorXd treated(g);
  Eigen::Index i = 0;
  for (const auto& [code, c] : cells) {
    design.row(i) = detail::code_to_row(code, k);
    trials[i] = c.treated + c.untreated;
    treated[i] = c.treated;
    ++i;
  }
  const GlmFit fit = fit_logistic_grouped(design, trials, treated, glm);

  std::map<std::uint64_t, double> lp_of;
  for (const auto& [code, c] : cells) {
    lp_of[code] = fit.linear_predictor(detail::code_to_row(code, k));
  }
  std::vector<double> lp(cr.rows.size());
  for (std::size_t r = 0; r < lp.size(); ++r) lp[r] = lp_of.at(codes[r]);

  PropensityMatch out;
  out.glm_converged = fit.converged;
  out.caliper_width = caliper * sample_sd(lp);

  // Untreated pool: linear predictor -> rows in ascending index order.
  std::map<double, std::deque<std::size_t>> pool;
  std::vector<std::size_t> treated_order;
  for (std::size_t r = 0; r < cr.rows.size(); ++r) {
    if (cr.treated[r]) {
      treated_order.push_back(r);
    } else {
      pool[lp[r]].push_back(cr.rows[r]);
    }
  }
  std::stable_sort(treated_order.begin(), treated_order.end(),
                   [&lp](std::size_t a, std::size_t b) { return lp[a] > lp[b]; });

  out.pairs.reserve(std::min(treated_order.size(), cr.n_untreated));
  for (std::size_t r : treated_order) {
    if (pool.empty()) {
      ++out.unmatched_treated;
      continue;
    }
    const double score = lp[r];
    auto above = pool.lower_bound(score);
    auto best = pool.end();
    double best_distance = 0;
    if (above != pool.end()) {
      best = above;
      best_distance = above->first - score;
    }
    if (above != pool.begin()) {
      auto below = std::prev(above);
      const double d = score - below->first;
      if (best == pool.end() || d < best_distance ||
          (d == best_distance && below->second.front() < best->second.front())) {
        best = below;
        best_distance = d;
      }
    }
    if (best_distance > out.caliper_width) {
      ++out.unmatched_treated;
      continue;
    }
    out.pairs.emplace_back(cr.rows[r], best->second.front());
    best->second.pop_front();
    if (best->second.empty()) pool.erase(best);
  }
  return out;
}

}  // namespace causal_rules
