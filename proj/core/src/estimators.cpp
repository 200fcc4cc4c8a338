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

#include "causal_rules/estimators.hpp"

#include <stdexcept>

#include "context_rows.hpp"

namespace causal_rules {

using detail::ArmCounts;
using detail::ContextRows;
using detail::not_estimable;

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::Conf:
      return "conf";
    case Method::CC:
      return "cc";
    case Method::DA:
      return "da";
    case Method::CM:
      return "cm";
    case Method::PSM:
      return "psm";
    case Method::SN:
      return "sn";
  }
  return "cc";
}

std::optional<Method> parse_method(std::string_view text) noexcept {
  for (auto m : kAllMethods) {
    if (to_string(m) == text) return m;
  }
  return std::nullopt;
}

namespace {

AttEstimate estimable(Method method, const ContextRows& cr, double att) {
  AttEstimate est;
  est.method = method;
  est.att = att;
  est.n_treated = cr.n_treated;
  est.n_untreated = cr.n_untreated;
  est.estimable = true;
  return est;
}

void record_glm(AttEstimate& est, const GlmFit& fit) {
  est.diagnostics["glm_converged"] = fit.converged ? 1.0 : 0.0;
  est.diagnostics["glm_iterations"] = fit.iterations;
}

}  // namespace

AttEstimate att_conf(const EstimationContext& ctx) {
  const ContextRows cr = detail::gather_rows(ctx);
  if (cr.n_treated == 0) return not_estimable(Method::Conf, cr, "no_treated");
  return estimable(Method::Conf, cr, cr.rate_treated());
}

AttEstimate att_cc(const EstimationContext& ctx) {
  const ContextRows cr = detail::gather_rows(ctx);
  if (cr.n_treated == 0) return not_estimable(Method::CC, cr, "no_treated");
  if (cr.n_untreated == 0) return not_estimable(Method::CC, cr, "no_untreated");
  return estimable(Method::CC, cr, cr.rate_treated() - cr.rate_untreated());
}

AttEstimate att_da(const EstimationContext& ctx, const GlmOptions& glm) {
  const ContextRows cr = detail::gather_rows(ctx);
  if (cr.n_treated == 0) return not_estimable(Method::DA, cr, "no_treated");
  if (cr.n_untreated == 0) return not_estimable(Method::DA, cr, "no_untreated");
  const ItemSet predictors = ctx.classification.adjustment_set();
  if (predictors.size() > detail::kMaxPatternItems) {
    return not_estimable(Method::DA, cr, "too_many_covariates");
  }
  const auto codes = detail::pattern_codes(ctx.data(), cr.rows, predictors);
  const auto cells = detail::tabulate(cr, codes);

  // One design row per (pattern, arm) with observations; x is the last column.
  const std::size_t k = predictors.size();
  std::vector<std::pair<std::uint64_t, int>> keys;
  for (const auto& [code, c] : cells) {
    if (c.untreated > 0) keys.emplace_back(code, 0);
    if (c.treated > 0) keys.emplace_back(code, 1);
  }
  const auto g = static_cast<Eigen::Index>(keys.size());
  Eigen::MatrixXd design(g, static_cast<Eigen::Index>(k + 1));
  Eigen::VectorXd trials(g);
  Eigen::VectorXd events(g);
  for (Eigen::Index i = 0; i < g; ++i) {
    const auto [code, arm] = keys[static_cast<std::size_t>(i)];
    const ArmCounts& c = cells.at(code);
    design.row(i).head(static_cast<Eigen::Index>(k)) = detail::code_to_row(code, k);
    design(i, static_cast<Eigen::Index>(k)) = arm;
    trials[i] = arm ? c.treated : c.untreated;
    events[i] = arm ? c.treated_events : c.untreated_events;
  }

  GlmFit fit;
  try {
    fit = fit_logistic_grouped(design, trials, events, glm);
  } catch (const CollinearDesign&) {
    return not_estimable(Method::DA, cr, "collinear_design");
  }

  double total = 0;
  Eigen::VectorXd row(static_cast<Eigen::Index>(k + 1));
  for (const auto& [code, c] : cells) {
    if (c.treated == 0) continue;
    row.head(static_cast<Eigen::Index>(k)) = detail::code_to_row(code, k);
    row[static_cast<Eigen::Index>(k)] = 1.0;
    const double p1 = fit.predict(row);
    row[static_cast<Eigen::Index>(k)] = 0.0;
    const double p0 = fit.predict(row);
    total += c.treated * (p1 - p0);
  }
  AttEstimate est = estimable(Method::DA, cr, total / static_cast<double>(cr.n_treated));
  record_glm(est, fit);
  est.diagnostics["n_predictors"] = static_cast<double>(k);
  return est;
}

AttEstimate att_cm(const EstimationContext& ctx, const GlmOptions& glm) {
  const ContextRows cr = detail::gather_rows(ctx);
  if (cr.n_treated == 0) return not_estimable(Method::CM, cr, "no_treated");
  if (cr.n_untreated == 0) return not_estimable(Method::CM, cr, "no_untreated");
  const ItemSet predictors = ctx.classification.adjustment_set();
  if (predictors.size() > detail::kMaxPatternItems) {
    return not_estimable(Method::CM, cr, "too_many_covariates");
  }
  const auto codes = detail::pattern_codes(ctx.data(), cr.rows, predictors);
  const auto cells = detail::tabulate(cr, codes);

  const std::size_t k = predictors.size();
  std::vector<std::uint64_t> untreated_codes;
  for (const auto& [code, c] : cells) {
    if (c.untreated > 0) untreated_codes.push_back(code);
  }
  const auto g = static_cast<Eigen::Index>(untreated_codes.size());
  Eigen::MatrixXd design(g, static_cast<Eigen::Index>(k));
  Eigen::VectorXd trials(g);
  Eigen::VectorXd events(g);
  for (Eigen::Index i = 0; i < g; ++i) {
    const ArmCounts& c = cells.at(untreated_codes[static_cast<std::size_t>(i)]);
    design.row(i) = detail::code_to_row(untreated_codes[static_cast<std::size_t>(i)], k);
    trials[i] = c.untreated;
    events[i] = c.untreated_events;
  }

  GlmFit fit;
  try {
    fit = fit_logistic_grouped(design, trials, events, glm);
  } catch (const CollinearDesign&) {
    return not_estimable(Method::CM, cr, "collinear_design");
  }

  double counterfactual = 0;
  for (const auto& [code, c] : cells) {
    if (c.treated == 0) continue;
    counterfactual += c.treated * fit.predict(detail::code_to_row(code, k));
  }
  counterfactual /= static_cast<double>(cr.n_treated);
  AttEstimate est = estimable(Method::CM, cr, cr.rate_treated() - counterfactual);
  record_glm(est, fit);
  est.diagnostics["n_predictors"] = static_cast<double>(k);
  return est;
}

AttEstimate att_psm(const EstimationContext& ctx, double caliper, std::uint64_t seed,
                    const GlmOptions& glm) {
  if (!(caliper >= 0)) throw std::invalid_argument("caliper must be non-negative");
  const ContextRows cr = detail::gather_rows(ctx);
  if (cr.n_treated == 0) return not_estimable(Method::PSM, cr, "no_treated");
  if (cr.n_untreated == 0) return not_estimable(Method::PSM, cr, "no_untreated");
  if (ctx.classification.treatment_predictors().size() > detail::kMaxPatternItems) {
    return not_estimable(Method::PSM, cr, "too_many_covariates");
  }

  PropensityMatch match;
  try {
    match = match_on_propensity(ctx, caliper, seed, glm);
  } catch (const CollinearDesign&) {
    return not_estimable(Method::PSM, cr, "collinear_design");
  }

  const Dataset& ds = ctx.data();
  const RowMask& y = ds.column(ctx.outcome);
  double treated_events = 0;
  double untreated_events = 0;
  for (const auto& [t, u] : match.pairs) {
    treated_events += y.test(t) ? 1 : 0;
    untreated_events += y.test(u) ? 1 : 0;
  }
  AttEstimate est;
  if (match.pairs.empty()) {
    est = not_estimable(Method::PSM, cr, "no_pairs");
  } else {
    const auto pairs = static_cast<double>(match.pairs.size());
    est = estimable(Method::PSM, cr, (treated_events - untreated_events) / pairs);
  }
  est.diagnostics["pairs"] = static_cast<double>(match.pairs.size());
  est.diagnostics["unmatched_treated"] = static_cast<double>(match.unmatched_treated);
  est.diagnostics["degenerate_propensity"] = match.degenerate_propensity ? 1.0 : 0.0;
  est.diagnostics["caliper_width"] = match.caliper_width;
  est.diagnostics["glm_converged"] = match.glm_converged ? 1.0 : 0.0;
  return est;
}

AttEstimate att_sn(const EstimationContext& ctx, std::size_t min_cell) {
  const ContextRows cr = detail::gather_rows(ctx);
  if (cr.n_treated == 0) return not_estimable(Method::SN, cr, "no_treated");
  if (cr.n_untreated == 0) return not_estimable(Method::SN, cr, "no_untreated");
  const ItemSet strata_items = ctx.classification.adjustment_set();
  if (strata_items.size() > detail::kMaxPatternItems) {
    return not_estimable(Method::SN, cr, "too_many_covariates");
  }
  const auto codes = detail::pattern_codes(ctx.data(), cr.rows, strata_items);
  const auto cells = detail::tabulate(cr, codes);

  const auto floor = static_cast<double>(min_cell);
  double weighted = 0;
  double kept_treated = 0;
  std::size_t strata_used = 0;
  for (const auto& [code, c] : cells) {
    if (c.treated < floor || c.untreated < floor || c.treated == 0 || c.untreated == 0) continue;
    weighted += c.treated * (c.treated_events / c.treated - c.untreated_events / c.untreated);
    kept_treated += c.treated;
    ++strata_used;
  }
  const auto n_treated = static_cast<double>(cr.n_treated);
  AttEstimate est = kept_treated > 0 ? estimable(Method::SN, cr, weighted / kept_treated)
                                     : not_estimable(Method::SN, cr, "all_strata_dropped");
  est.diagnostics["strata_total"] = static_cast<double>(cells.size());
  est.diagnostics["strata_used"] = static_cast<double>(strata_used);
  est.diagnostics["dropped_treated_mass"] = (n_treated - kept_treated) / n_treated;
  return est;
}

AttEstimate estimate(Method method, const EstimationContext& ctx,
                     const EstimatorOptions& options) {
  switch (method) {
    case Method::Conf:
      return att_conf(ctx);
    case Method::CC:
      return att_cc(ctx);
    case Method::DA:
      return att_da(ctx, options.glm);
    case Method::CM:
      return att_cm(ctx, options.glm);
    case Method::PSM:
      return att_psm(ctx, options.caliper, options.seed, options.glm);
    case Method::SN:
      return att_sn(ctx, options.min_cell);
  }
  throw std::invalid_argument("unknown estimation method");
}

}  // namespace causal_rules
