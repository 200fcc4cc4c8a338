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

#include "causal_rules/classifier.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "causal_rules/contingency.hpp"

namespace causal_rules {

std::string_view to_string(CovariateCategory category) noexcept {
  switch (category) {
    case CovariateCategory::Indirect:
      return "U_indirect";
    case CovariateCategory::Confounder:
      return "Z_confounder";
    case CovariateCategory::Direct:
      return "V_direct";
    case CovariateCategory::Ignorable:
      return "O_ignorable";
  }
  return "O_ignorable";
}

std::optional<CovariateCategory> parse_category(std::string_view text) noexcept {
  for (auto c : {CovariateCategory::Indirect, CovariateCategory::Confounder,
                 CovariateCategory::Direct, CovariateCategory::Ignorable}) {
    if (to_string(c) == text || to_string(c).substr(0, 1) == text) return c;
  }
  return std::nullopt;
}

CovariateClassification CovariateClassification::fixed(
    std::vector<std::pair<ItemId, CovariateCategory>> categories) {
  CovariateClassification out;
  std::sort(categories.begin(), categories.end());
  for (const auto& [item, category] : categories) {
    CovariateAssessment a;
    a.item = item;
    a.category = category;
    out.assessments.push_back(a);
  }
  return out;
}

const CovariateAssessment* CovariateClassification::find(ItemId item) const noexcept {
  auto it = std::lower_bound(
      assessments.begin(), assessments.end(), item,
      [](const CovariateAssessment& a, ItemId id) { return a.item < id; });
  return (it != assessments.end() && it->item == item) ? &*it : nullptr;
}

ItemSet CovariateClassification::items_in(
    std::initializer_list<CovariateCategory> categories) const {
  std::vector<ItemId> out;
  for (const auto& a : assessments) {
    if (std::find(categories.begin(), categories.end(), a.category) != categories.end()) {
      out.push_back(a.item);
    }
  }
  return ItemSet(std::move(out));
}

namespace {

std::size_t and_count(const RowMask& a, const RowMask& b) {
  const auto wa = a.words();
  const auto wb = b.words();
  std::size_t c = 0;
  for (std::size_t i = 0; i < wa.size(); ++i) c += std::popcount(wa[i] & wb[i]);
  return c;
}

std::size_t and_count(const RowMask& a, const RowMask& b, const RowMask& m) {
  const auto wa = a.words();
  const auto wb = b.words();
  const auto wm = m.words();
  std::size_t c = 0;
  for (std::size_t i = 0; i < wa.size(); ++i) c += std::popcount(wa[i] & wb[i] & wm[i]);
  return c;
}

/// Table of `exposure` against `outcome` over rows in `mask`.
Table2x2 cross_table(const RowMask& exposure, const RowMask& outcome, const RowMask& mask,
                     std::size_t mask_count) {
  const auto both = static_cast<double>(and_count(exposure, outcome, mask));
  const auto exposed = static_cast<double>(and_count(exposure, mask));
  const auto events = static_cast<double>(and_count(outcome, mask));
  const auto total = static_cast<double>(mask_count);
  return {both, events - both, exposed - both, total - exposed - events + both};
}

/// Strata keyed by packed bits; words_per_key > 1 only with > 63 strata items.
class StratumTables {
 public:
  explicit StratumTables(std::size_t words) : words_(words) {}

  void add(std::span<const std::uint64_t> key, bool exposed, bool outcome) {
    Table2x2* t = nullptr;
    if (words_ == 1) {
      t = &small_[key[0]];
    } else {
      t = &large_[std::vector<std::uint64_t>(key.begin(), key.end())];
    }
    if (exposed) {
      (outcome ? t->a : t->c) += 1;
    } else {
      (outcome ? t->b : t->d) += 1;
    }
  }

  [[nodiscard]] std::vector<Table2x2> tables() const {
    std::vector<Table2x2> out;
    out.reserve(small_.size() + large_.size());
    // Sorted iteration keeps the floating-point sum order deterministic.
    std::map<std::uint64_t, Table2x2> ordered(small_.begin(), small_.end());
    for (const auto& [k, t] : ordered) out.push_back(t);
    for (const auto& [k, t] : large_) out.push_back(t);
    return out;
  }

 private:
  std::size_t words_;
  std::unordered_map<std::uint64_t, Table2x2> small_;
  std::map<std::vector<std::uint64_t>, Table2x2> large_;
};

}  // namespace

CovariateClassification classify(const Dataset& ds, ItemId x, ItemId y, const ItemSet& s,
                                 double alpha) {
  ds.check_item(x);
  ds.check_item(y);
  if (x == y) throw std::invalid_argument("intervention and outcome must differ");
  if (s.contains(x) || s.contains(y)) {
    throw std::invalid_argument("subpopulation must not contain the intervention or outcome");
  }
  if (!(alpha > 0 && alpha < 1)) throw std::invalid_argument("alpha must lie in (0, 1)");

  const RowMask mask = ds.rows_where(s);
  const std::size_t total = mask.count();
  const RowMask& x_col = ds.column(x);
  const RowMask& y_col = ds.column(y);

  CovariateClassification out;
  out.alpha = alpha;

  std::vector<ItemId> candidates;
  for (auto item : ds.all_items()) {
    if (item != x && item != y && !s.contains(item)) candidates.push_back(item);
  }

  // (a) marginal association with x.
  std::vector<bool> x_assoc(candidates.size(), false);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    CovariateAssessment a;
    a.item = candidates[i];
    const std::size_t ones = and_count(ds.column(a.item), mask);
    if (ones == 0 || ones == total) {
      a.degenerate = true;
      out.assessments.push_back(a);
      continue;
    }
    a.p_assoc_x = pearson_p_value(cross_table(ds.column(a.item), x_col, mask, total));
    x_assoc[i] = a.p_assoc_x < alpha;
    out.assessments.push_back(a);
  }

  // Per-row packed key: bit 0 = x, bit j+1 = j-th x-associated covariate.
  std::vector<std::size_t> strata_items;  // indices into candidates
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (x_assoc[i]) strata_items.push_back(i);
  }
  const std::size_t key_bits = strata_items.size() + 1;
  const std::size_t words = (key_bits + 63) / 64;
  std::vector<std::size_t> rows;
  rows.reserve(total);
  mask.for_each_set([&rows](std::size_t r) { rows.push_back(r); });
  std::vector<std::uint64_t> keys(rows.size() * words, 0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::uint64_t* key = &keys[r * words];
    if (x_col.test(rows[r])) key[0] |= 1;
    for (std::size_t j = 0; j < strata_items.size(); ++j) {
      if (ds.column(candidates[strata_items[j]]).test(rows[r])) {
        key[(j + 1) >> 6] |= std::uint64_t{1} << ((j + 1) & 63);
      }
    }
  }

  // (b) association with y given x and the other x-associated covariates.
  std::vector<std::uint64_t> scratch(words);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    auto& a = out.assessments[i];
    if (a.degenerate) continue;
    const RowMask& a_col = ds.column(a.item);
    if (strata_items.empty() || (strata_items.size() == 1 && x_assoc[i])) {
      // Only x defines the strata: count from bitsets directly.
      RowMask treated = mask;
      treated &= x_col;
      RowMask untreated = mask;
      untreated.and_not(x_col);
      const Table2x2 tables[2] = {
          cross_table(a_col, y_col, treated, treated.count()),
          cross_table(a_col, y_col, untreated, untreated.count())};
      a.p_assoc_y_given_x = cmh_p_value(tables);
    } else {
      std::size_t own_bit = key_bits;  // sentinel: not a strata item
      for (std::size_t j = 0; j < strata_items.size(); ++j) {
        if (strata_items[j] == i) own_bit = j + 1;
      }
      StratumTables strata(words);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        std::copy_n(&keys[r * words], words, scratch.begin());
        if (own_bit < key_bits) scratch[own_bit >> 6] &= ~(std::uint64_t{1} << (own_bit & 63));
        strata.add(scratch, a_col.test(rows[r]), y_col.test(rows[r]));
      }
      const auto tables = strata.tables();
      a.p_assoc_y_given_x = cmh_p_value(tables);
    }
    const bool with_x = a.p_assoc_x < alpha;
    const bool with_y = a.p_assoc_y_given_x < alpha;
    if (with_x && with_y) {
      a.category = CovariateCategory::Confounder;
    } else if (with_x) {
      a.category = CovariateCategory::Indirect;
    } else if (with_y) {
      a.category = CovariateCategory::Direct;
    } else {
      a.category = CovariateCategory::Ignorable;
    }
  }
  return out;
}

}  // namespace causal_rules
