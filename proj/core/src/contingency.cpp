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

#include "causal_rules/contingency.hpp"

#include <cmath>

namespace causal_rules {

bool Table2x2::degenerate() const noexcept {
  return (a + c) == 0 || (b + d) == 0 || (a + b) == 0 || (c + d) == 0;
}

double chi_square_1df_sf(double statistic) noexcept {
  if (!(statistic > 0)) return 1.0;
  return std::erfc(std::sqrt(statistic / 2.0));
}

double pearson_chi_square(const Table2x2& t) noexcept {
  if (t.degenerate()) return 0.0;
  const double n = t.total();
  const double diff = t.a * t.d - t.b * t.c;
  return n * diff * diff / ((t.a + t.c) * (t.b + t.d) * (t.a + t.b) * (t.c + t.d));
}

double pearson_p_value(const Table2x2& t) noexcept {
  return chi_square_1df_sf(pearson_chi_square(t));
}

double cmh_statistic(std::span<const Table2x2> strata) noexcept {
  double deviation = 0;
  double variance = 0;
  for (const auto& t : strata) {
    const double n = t.total();
    if (n < 2) continue;
    const double exposed = t.a + t.c;
    const double unexposed = t.b + t.d;
    const double events = t.a + t.b;
    const double non_events = t.c + t.d;
    deviation += t.a - exposed * events / n;
    variance += exposed * unexposed * events * non_events / (n * n * (n - 1));
  }
  if (!(variance > 0)) return 0.0;
  return deviation * deviation / variance;
}

double cmh_p_value(std::span<const Table2x2> strata) noexcept {
  return chi_square_1df_sf(cmh_statistic(strata));
}

}  // namespace causal_rules
