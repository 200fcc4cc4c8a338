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
#include <string>
#include <vector>

#include "causal_rules/dataset.hpp"
#include "causal_rules/random.hpp"

namespace causal_rules::testing {

/// Dataset from row strings such as "101", one character per item.
inline Dataset rows_dataset(const std::vector<std::string>& names,
                            const std::vector<ItemRole>& roles,
                            const std::vector<std::string>& rows) {
  std::vector<CatalogEntry> catalog;
  for (std::size_t i = 0; i < names.size(); ++i) catalog.push_back({names[i], roles[i]});
  std::vector<Observation> obs;
  for (const auto& r : rows) {
    Observation o(names.size());
    for (std::size_t c = 0; c < r.size(); ++c) o.set(c, r[c] == '1');
    obs.push_back(std::move(o));
  }
  return Dataset::from_rows(std::move(catalog), obs);
}

/// Independent Bernoulli items; item i is named "i<i>" and gets roles[i].
/// `rates[i]` defaults to 0.5 when `rates` is shorter than `roles`.
inline Dataset random_dataset(const std::vector<ItemRole>& roles, std::size_t n,
                              std::uint64_t seed, const std::vector<double>& rates = {}) {
  std::vector<CatalogEntry> catalog;
  std::vector<RowMask> columns;
  Rng rng(seed);
  for (std::size_t i = 0; i < roles.size(); ++i) {
    catalog.push_back({"i" + std::to_string(i), roles[i]});
    const double p = i < rates.size() ? rates[i] : 0.5;
    RowMask col(n);
    for (std::size_t r = 0; r < n; ++r) col.set(r, rng.bernoulli(p));
    columns.push_back(std::move(col));
  }
  return Dataset(std::move(catalog), std::move(columns));
}

/// Every subset of `items`, as ItemSets.
inline std::vector<ItemSet> power_set(const ItemSet& items, std::size_t max_size = 64) {
  std::vector<ItemSet> out;
  const std::size_t k = items.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) > max_size) continue;
    ItemSet s;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask >> i & 1U) s.insert(items[i]);
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace causal_rules::testing
