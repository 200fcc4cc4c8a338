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

// Internal helpers shared by the estimators.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "causal_rules/estimators.hpp"

namespace causal_rules::detail {

/// Largest covariate set that fits a packed 64-bit pattern code.
inline constexpr std::size_t kMaxPatternItems = 63;

/// Rows of the estimation population with their treatment and outcome bits.
struct ContextRows {
  std::vector<std::size_t> rows;
  std::vector<std::uint8_t> treated;
  std::vector<std::uint8_t> outcome;
  std::size_t n_treated = 0;
  std::size_t n_untreated = 0;
  std::size_t events_treated = 0;
  std::size_t events_untreated = 0;

  [[nodiscard]] double rate_treated() const {
    return static_cast<double>(events_treated) / static_cast<double>(n_treated);
  }
  [[nodiscard]] double rate_untreated() const {
    return static_cast<double>(events_untreated) / static_cast<double>(n_untreated);
  }
};

[[nodiscard]] ContextRows gather_rows(const EstimationContext& ctx);

/// Bit j of code r is items[j] on context row r. Requires items.size() <=
/// kMaxPatternItems.
[[nodiscard]] std::vector<std::uint64_t> pattern_codes(const Dataset& ds,
                                                       const std::vector<std::size_t>& rows,
                                                       const ItemSet& items);

/// Unpacks a code into a predictor row of `width` columns.
[[nodiscard]] Eigen::VectorXd code_to_row(std::uint64_t code, std::size_t width);

/// Counts per covariate pattern and treatment arm.
struct ArmCounts {
  double treated = 0;
  double treated_events = 0;
  double untreated = 0;
  double untreated_events = 0;
};

[[nodiscard]] std::map<std::uint64_t, ArmCounts> tabulate(const ContextRows& cr,
                                                          const std::vector<std::uint64_t>& codes);

[[nodiscard]] AttEstimate not_estimable(Method method, const ContextRows& cr,
                                        const char* reason);

}  // namespace causal_rules::detail
