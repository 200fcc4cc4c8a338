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

#include <limits>
#include <stdexcept>

#include "causal_rules/estimators.hpp"
#include "context_rows.hpp"

namespace causal_rules {

namespace {

void check_context(const Dataset& ds, const ItemSet& subpopulation, ItemId intervention,
                   const ItemSet& conditioning, ItemId outcome) {
  ds.check_item(intervention);
  for (auto i : subpopulation) ds.check_item(i);
  for (auto i : conditioning) ds.check_item(i);
  if (intervention == outcome) {
    throw std::invalid_argument("intervention item is the outcome item");
  }
  const ItemSet population = subpopulation | conditioning;
  if (population.contains(intervention) || population.contains(outcome)) {
    throw std::invalid_argument(
        "subpopulation and conditioning sets must exclude the intervention and outcome");
  }
  if (!subpopulation.is_disjoint(conditioning)) throw OverlappingSets();
}

}  // namespace

EstimationContext make_context(const Dataset& ds, const ItemSet& subpopulation,
                               ItemId intervention, const ItemSet& conditioning, double alpha) {
  const ItemId outcome = ds.outcome();
  check_context(ds, subpopulation, intervention, conditioning, outcome);
  return EstimationContext{std::cref(ds), subpopulation, intervention, conditioning, outcome,
                           classify(ds, intervention, outcome, subpopulation | conditioning,
                                    alpha)};
}

EstimationContext make_context(const Dataset& ds, const ItemSet& subpopulation,
                               ItemId intervention, const ItemSet& conditioning,
                               CovariateClassification classification) {
  const ItemId outcome = ds.outcome();
  check_context(ds, subpopulation, intervention, conditioning, outcome);
  return EstimationContext{std::cref(ds),  subpopulation, intervention,
                           conditioning,   outcome,       std::move(classification)};
}

namespace detail {

ContextRows gather_rows(const EstimationContext& ctx) {
  const Dataset& ds = ctx.data();
  const RowMask mask = ds.rows_where(ctx.population());
  const RowMask& x = ds.column(ctx.intervention);
  const RowMask& y = ds.column(ctx.outcome);
  ContextRows cr;
  const std::size_t total = mask.count();
  cr.rows.reserve(total);
  cr.treated.reserve(total);
  cr.outcome.reserve(total);
  mask.for_each_set([&](std::size_t r) {
    const bool t = x.test(r);
    const bool e = y.test(r);
    cr.rows.push_back(r);
    cr.treated.push_back(t ? 1 : 0);
    cr.outcome.push_back(e ? 1 : 0);
    if (t) {
      ++cr.n_treated;
      cr.events_treated += e ? 1 : 0;
    } else {
      ++cr.n_untreated;
      cr.events_untreated += e ? 1 : 0;
    }
  });
  return cr;
}

std::vector<std::uint64_t> pattern_codes(const Dataset& ds, const std::vector<std::size_t>& rows,
                                         const ItemSet& items) {
  if (items.size() > kMaxPatternItems) {
    throw std::length_error("too many covariates for pattern coding");
  }
  std::vector<std::uint64_t> codes(rows.size(), 0);
  for (std::size_t j = 0; j < items.size(); ++j) {
    const RowMask& col = ds.column(items[j]);
    const std::uint64_t bit = std::uint64_t{1} << j;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (col.test(rows[r])) codes[r] |= bit;
    }
  }
  return codes;
}

Eigen::VectorXd code_to_row(std::uint64_t code, std::size_t width) {
  Eigen::VectorXd row(static_cast<Eigen::Index>(width));
  for (std::size_t j = 0; j < width; ++j) {
    row[static_cast<Eigen::Index>(j)] = ((code >> j) & 1U) ? 1.0 : 0.0;
  }
  return row;
}

std::map<std::uint64_t, ArmCounts> tabulate(const ContextRows& cr,
                                            const std::vector<std::uint64_t>& codes) {
  std::map<std::uint64_t, ArmCounts> cells;
  for (std::size_t r = 0; r < codes.size(); ++r) {
    auto& cell = cells[codes[r]];
    if (cr.treated[r]) {
      cell.treated += 1;
      cell.treated_events += cr.outcome[r];
    } else {
      cell.untreated += 1;
      cell.untreated_events += cr.outcome[r];
    }
  }
  return cells;
}

AttEstimate not_estimable(Method method, const ContextRows& cr, const char* reason) {
  AttEstimate est;
  est.method = method;
  est.att = std::numeric_limits<double>::quiet_NaN();
  est.n_treated = cr.n_treated;
  est.n_untreated = cr.n_untreated;
  est.estimable = false;
  est.diagnostics[reason] = 1.0;
  return est;
}

}  // namespace detail
}  // namespace causal_rules
