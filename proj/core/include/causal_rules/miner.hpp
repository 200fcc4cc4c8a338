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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "causal_rules/dataset.hpp"
#include "causal_rules/estimators.hpp"

namespace causal_rules {

enum class Pruning {
  AprioriOnly,  // support(S ∪ X) > θ
  Posp,         // potential-outcome support: every leave-one-out contrast > θ too
  PospEcrp,     // POSP, and never extend an intervention set that is not closed
};

[[nodiscard]] std::string_view to_string(Pruning pruning) noexcept;
[[nodiscard]] std::optional<Pruning> parse_pruning(std::string_view text) noexcept;

struct MiningConfig {
  double min_support = 0.05;  // θ
  double min_effect = 0.05;   // η
  std::size_t max_subpop_size = 2;
  std::size_t max_intervention_size = 3;
  Method estimator = Method::SN;
  Pruning pruning = Pruning::PospEcrp;
  double caliper = 0.1;
  double alpha = kDefaultAlpha;
  std::size_t min_cell = 5;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  /// Keep every (S, X) that survived pruning in MiningResult::survivors.
  bool record_survivors = false;

  /// Throws std::invalid_argument naming the offending field.
  void validate(std::size_t n) const;
};

struct MemberEffect {
  ItemId item;
  AttEstimate estimate;  // evaluated in context (S, X \ item)
};

/// X -> y | S.
struct CausalRule {
  ItemSet subpopulation;
  ItemSet interventions;
  ItemId outcome;
  double support = 0.0;       // P(S ∪ X ∪ {y})
  double body_support = 0.0;  // P(S ∪ X)
  std::vector<MemberEffect> members;
  /// Every member estimable with |ATT| > η.
  bool closed = false;

  [[nodiscard]] double min_abs_att() const;
};

struct MiningStats {
  std::size_t subpopulations = 0;  // frequent S visited
  std::size_t candidates_generated = 0;
  std::size_t pruned_subset = 0;   // an immediate subset did not survive
  std::size_t pruned_support = 0;  // support(S ∪ X) <= θ
  std::size_t pruned_posp = 0;     // some support(S, X_-i) <= θ
  std::size_t pruned_ecrp = 0;     // some parent intervention set not closed
  std::size_t evaluated = 0;
  std::size_t not_estimable = 0;
  std::size_t not_closed = 0;
  std::size_t infrequent = 0;  // closed, but support(S ∪ X ∪ {y}) <= θ
  std::size_t rules_emitted = 0;
  double wall_seconds = 0.0;

  MiningStats& operator+=(const MiningStats& other);
};

struct MiningResult {
  std::vector<CausalRule> rules;  // ordered by (S, X), level-wise
  MiningStats stats;
  std::vector<std::pair<ItemSet, ItemSet>> survivors;  // (S, X), when recorded
};

/// Two nested level-wise (Apriori) enumerations: frequent subpopulations S
/// over subpopulation items, and for each S, intervention sets X over
/// intervention items under the configured pruning. Every surviving (S, X)
/// is evaluated member by member; closed and frequent rules are returned.
[[nodiscard]] MiningResult mine(const Dataset& ds, const MiningConfig& cfg);

/// min{support(S ∪ X), support(S, X_-1), ..., support(S, X_-k)} > θ, where
/// X_-i has every item of X but the i-th true and the i-th false.
[[nodiscard]] bool posp_check(const Dataset& ds, const ItemSet& subpopulation,
                              const ItemSet& interventions, double min_support);

/// Effective-rule pruning: false (do not extend `parent` by `candidate`)
/// when the parent is not closed at `min_effect`. Sound when intervention
/// effects are additive.
[[nodiscard]] bool ecrp_extend(const CausalRule& parent, ItemId candidate, double min_effect);

/// Evaluates every member of X in (S, X \ x) with the configured estimator.
[[nodiscard]] CausalRule evaluate_rule(const Dataset& ds, const ItemSet& subpopulation,
                                       const ItemSet& interventions, const MiningConfig& cfg);

[[nodiscard]] bool is_closed(const std::vector<MemberEffect>& members, double min_effect);

}  // namespace causal_rules
