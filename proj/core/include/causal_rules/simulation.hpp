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
#include <vector>

#include "causal_rules/dataset.hpp"

namespace causal_rules {

/// Five synthetic designs with a binary treatment X and outcome Y.
///
///   I    V (P=.2) raises P(Y) by .05; X (P=.3) independent of V.
///   II   U (P=.2) drives X (.95 vs .30) but not Y.
///   III  Z (P=.2) drives X (.95 vs 0) and Y.
///   IV   III plus an independent U; X is .95 when Z or U, else 0.
///   V    IV plus an independent V raising P(Y) by .05.
///
/// X lowers P(Y) by .15 wherever it can act (everywhere in I and II, only
/// when Z holds in III to V). Without Z the outcome rate is .05.
enum class Scenario { I = 1, II = 2, III = 3, IV = 4, V = 5 };

inline constexpr Scenario kAllScenarios[] = {Scenario::I, Scenario::II, Scenario::III,
                                             Scenario::IV, Scenario::V};

[[nodiscard]] std::string_view to_string(Scenario scenario) noexcept;
/// Accepts "1".."5" and "I".."V".
[[nodiscard]] std::optional<Scenario> parse_scenario(std::string_view text) noexcept;

struct ScenarioSpec {
  Scenario id = Scenario::I;
  std::size_t n = 5000;
  std::uint64_t seed = 0;

  [[nodiscard]] double true_att() const noexcept;
};

/// Item names in catalog order, X and Y last.
[[nodiscard]] std::vector<std::string_view> scenario_items(Scenario scenario);

/// Draws `spec.n` rows. X is the intervention, Y the outcome, the rest are
/// covariates. Same spec, same dataset.
[[nodiscard]] Dataset generate(const ScenarioSpec& spec);

[[nodiscard]] double analytic_att(Scenario scenario) noexcept;
[[nodiscard]] inline double analytic_att(const ScenarioSpec& spec) noexcept {
  return analytic_att(spec.id);
}

}  // namespace causal_rules
