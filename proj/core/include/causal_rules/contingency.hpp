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

#include <cstdint>
#include <span>

namespace causal_rules {

/// 2x2 table of counts. Rows index the exposure (a: exposed, b: unexposed
/// counts among outcome=1; c, d among outcome=0):
///
///              outcome=1  outcome=0
///   exposed        a          c
///   unexposed      b          d
struct Table2x2 {
  double a = 0;  // exposed, outcome
  double b = 0;  // unexposed, outcome
  double c = 0;  // exposed, no outcome
  double d = 0;  // unexposed, no outcome

  [[nodiscard]] double total() const noexcept { return a + b + c + d; }
  [[nodiscard]] bool degenerate() const noexcept;
};

/// Upper tail of the chi-square distribution with one degree of freedom.
[[nodiscard]] double chi_square_1df_sf(double statistic) noexcept;

/// Pearson chi-square statistic without continuity correction; 0 for a table
/// with an empty margin.
[[nodiscard]] double pearson_chi_square(const Table2x2& t) noexcept;
[[nodiscard]] double pearson_p_value(const Table2x2& t) noexcept;

/// Cochran-Mantel-Haenszel statistic (no continuity correction) across
/// strata. Strata with fewer than two observations carry no information.
/// Returns 0 when the pooled variance is zero.
[[nodiscard]] double cmh_statistic(std::span<const Table2x2> strata) noexcept;
[[nodiscard]] double cmh_p_value(std::span<const Table2x2> strata) noexcept;

}  // namespace causal_rules
