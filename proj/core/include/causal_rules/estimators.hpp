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

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "causal_rules/classifier.hpp"
#include "causal_rules/dataset.hpp"
#include "causal_rules/glm.hpp"

namespace causal_rules {

enum class Method { Conf, CC, DA, CM, PSM, SN };

inline constexpr std::array<Method, 6> kAllMethods = {Method::Conf, Method::CC, Method::DA,
                                                      Method::CM,   Method::PSM, Method::SN};

[[nodiscard]] std::string_view to_string(Method method) noexcept;
[[nodiscard]] std::optional<Method> parse_method(std::string_view text) noexcept;

/// ATT of one intervention item, as a risk difference. Negative values mean
/// the intervention lowers the outcome rate.
struct AttEstimate {
  Method method = Method::CC;
  double att = 0.0;  // NaN when not estimable
  std::size_t n_treated = 0;
  std::size_t n_untreated = 0;
  bool estimable = false;
  std::map<std::string, double> diagnostics;
};

/// Where an ATT is evaluated: rows supporting subpopulation ∪ conditioning,
/// with `intervention` as the treatment and `outcome` as the response.
struct EstimationContext {
  std::reference_wrapper<const Dataset> dataset;
  ItemSet subpopulation;
  ItemId intervention;
  /// Other members of the intervention set, held true.
  ItemSet conditioning;
  ItemId outcome;
  CovariateClassification classification;

  [[nodiscard]] const Dataset& data() const noexcept { return dataset.get(); }
  [[nodiscard]] ItemSet population() const { return subpopulation | conditioning; }
};

/// Context with the covariates classified from the data.
[[nodiscard]] EstimationContext make_context(const Dataset& ds, const ItemSet& subpopulation,
                                             ItemId intervention,
                                             const ItemSet& conditioning = {},
                                             double alpha = kDefaultAlpha);

/// Context with a caller-supplied classification.
[[nodiscard]] EstimationContext make_context(const Dataset& ds, const ItemSet& subpopulation,
                                             ItemId intervention, const ItemSet& conditioning,
                                             CovariateClassification classification);

struct EstimatorOptions {
  /// PSM caliper as a multiple of the SD of the propensity linear predictor.
  double caliper = 0.1;
  std::uint64_t seed = 0;
  /// SN: minimum treated and untreated rows for a stratum to count.
  std::size_t min_cell = 5;
  GlmOptions glm;
};

/// P(y | x=1) in the population. Plain rule confidence.
[[nodiscard]] AttEstimate att_conf(const EstimationContext& ctx);

/// P(y | x=1) - P(y | x=0).
[[nodiscard]] AttEstimate att_cc(const EstimationContext& ctx);

/// Direct adjustment: logistic y ~ Z + V + x on the population, then the
/// mean over treated rows of p(x forced 1) - p(x forced 0).
[[nodiscard]] AttEstimate att_da(const EstimationContext& ctx, const GlmOptions& glm = {});

/// Counterfactual model: logistic y ~ Z + V on untreated rows; ATT is
/// P(y | x=1) minus the mean counterfactual prediction over treated rows.
[[nodiscard]] AttEstimate att_cm(const EstimationContext& ctx, const GlmOptions& glm = {});

/// Propensity score matching (see match_on_propensity), then the outcome
/// rate difference over the matched population.
[[nodiscard]] AttEstimate att_psm(const EstimationContext& ctx, double caliper,
                                  std::uint64_t seed, const GlmOptions& glm = {});

/// Stratified non-parametric: sum over joint levels l of Z ∪ V of
/// P(l | x=1) [P(y | x=1, l) - P(y | x=0, l)], restricted to strata with at
/// least `min_cell` treated and untreated rows (weights renormalized).
[[nodiscard]] AttEstimate att_sn(const EstimationContext& ctx, std::size_t min_cell = 5);

[[nodiscard]] AttEstimate estimate(Method method, const EstimationContext& ctx,
                                   const EstimatorOptions& options = {});

struct PropensityMatch {
  /// (treated row, untreated row), dataset row indices, in matching order.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::size_t unmatched_treated = 0;
  /// No propensity predictors: pairs were drawn uniformly at random.
  bool degenerate_propensity = false;
  double caliper_width = 0.0;
  bool glm_converged = true;
};

/// Greedy 1:1 nearest-neighbour matching without replacement on the
/// propensity linear predictor. The propensity model regresses x on the
/// covariates classified as x-associated (Z ∪ U). Treated rows are visited
/// in descending propensity (ties: lower row first) and take the nearest
/// unmatched untreated row within caliper * SD(linear predictor); equal
/// distances go to the lower row index. Throws CollinearDesign when the
/// propensity design is rank deficient.
[[nodiscard]] PropensityMatch match_on_propensity(const EstimationContext& ctx, double caliper,
                                                  std::uint64_t seed,
                                                  const GlmOptions& glm = {});

}  // namespace causal_rules
