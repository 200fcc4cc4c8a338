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

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "causal_rules/dataset.hpp"
#include "causal_rules/itemset.hpp"

namespace causal_rules {

/// Position of a covariate in the causal graph around an intervention x and
/// outcome y.
enum class CovariateCategory {
  Indirect,    // U: affects y only through x
  Confounder,  // Z: affects both x and y
  Direct,      // V: affects y, independent of x
  Ignorable,   // O: affects neither
};

[[nodiscard]] std::string_view to_string(CovariateCategory category) noexcept;
[[nodiscard]] std::optional<CovariateCategory> parse_category(std::string_view text) noexcept;

inline constexpr double kDefaultAlpha = 0.05;

struct CovariateAssessment {
  ItemId item;
  CovariateCategory category = CovariateCategory::Ignorable;
  double p_assoc_x = 1.0;          // covariate vs x
  double p_assoc_y_given_x = 1.0;  // covariate vs y, stratified (see classify)
  /// Covariate constant within the subpopulation; forced to Ignorable.
  bool degenerate = false;
};

struct CovariateClassification {
  double alpha = kDefaultAlpha;
  std::vector<CovariateAssessment> assessments;  // ascending by item

  /// Builds a classification from known categories (p-values left at 1).
  [[nodiscard]] static CovariateClassification fixed(
      std::vector<std::pair<ItemId, CovariateCategory>> categories);

  [[nodiscard]] const CovariateAssessment* find(ItemId item) const noexcept;
  [[nodiscard]] ItemSet items_in(std::initializer_list<CovariateCategory> categories) const;

  /// Z ∪ V: outcome-model predictors and stratification variables.
  [[nodiscard]] ItemSet adjustment_set() const {
    return items_in({CovariateCategory::Confounder, CovariateCategory::Direct});
  }
  /// Z ∪ U: covariates associated with the intervention (propensity model).
  [[nodiscard]] ItemSet treatment_predictors() const {
    return items_in({CovariateCategory::Confounder, CovariateCategory::Indirect});
  }
};

/// Assigns each item outside s ∪ {x, y} to U, Z, V or O using rows that
/// support s.
///
/// For covariate A:
///   (a) Pearson chi-square of A against x;
///   (b) Cochran-Mantel-Haenszel test of A against y, stratified by x and by
///       the joint levels of every *other* covariate significant in (a).
/// Both significant -> Z, (a) only -> U, (b) only -> V, neither -> O.
///
/// Stratifying (b) on the other x-predictors blocks the path A -> x <- B
/// that otherwise makes a pure x-predictor look outcome-related once x is
/// fixed.
[[nodiscard]] CovariateClassification classify(const Dataset& ds, ItemId x, ItemId y,
                                                const ItemSet& s,
                                                double alpha = kDefaultAlpha);

}  // namespace causal_rules
