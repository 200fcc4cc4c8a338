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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace causal_rules {

/// Index of an item in a dataset's catalog.
struct ItemId {
  std::uint32_t index = 0;

  constexpr ItemId() = default;
  constexpr explicit ItemId(std::uint32_t i) : index(i) {}

  friend constexpr auto operator<=>(ItemId, ItemId) = default;
};

/// A set of items kept in canonical ascending order, so equal sets compare
/// equal and can be used directly as map keys.
class ItemSet {
 public:
  using const_iterator = std::vector<ItemId>::const_iterator;

  ItemSet() = default;
  ItemSet(std::initializer_list<ItemId> items);
  explicit ItemSet(std::vector<ItemId> items);

  [[nodiscard]] std::size_t size() const noexcept { return members_.size(); }
  [[nodiscard]] bool empty() const noexcept { return members_.empty(); }
  [[nodiscard]] const_iterator begin() const noexcept { return members_.begin(); }
  [[nodiscard]] const_iterator end() const noexcept { return members_.end(); }
  [[nodiscard]] ItemId operator[](std::size_t i) const { return members_[i]; }
  [[nodiscard]] std::span<const ItemId> members() const noexcept { return members_; }

  [[nodiscard]] bool contains(ItemId item) const noexcept;
  [[nodiscard]] bool is_subset_of(const ItemSet& other) const noexcept;
  [[nodiscard]] bool is_disjoint(const ItemSet& other) const noexcept;

  /// Copy with `item` added (no-op when already present).
  [[nodiscard]] ItemSet with(ItemId item) const;
  /// Copy with `item` removed (no-op when absent).
  [[nodiscard]] ItemSet without(ItemId item) const;

  void insert(ItemId item);

  friend ItemSet operator|(const ItemSet& a, const ItemSet& b);
  friend ItemSet operator-(const ItemSet& a, const ItemSet& b);
  friend ItemSet operator&(const ItemSet& a, const ItemSet& b);

  /// Ordering by size first, then lexicographically: the level-wise order
  /// in which the miner enumerates itemsets.
  friend std::strong_ordering operator<=>(const ItemSet& a, const ItemSet& b);
  friend bool operator==(const ItemSet& a, const ItemSet& b) = default;

 private:
  std::vector<ItemId> members_;
};

}  // namespace causal_rules

template <>
struct std::hash<causal_rules::ItemId> {
  std::size_t operator()(causal_rules::ItemId id) const noexcept {
    return std::hash<std::uint32_t>{}(id.index);
  }
};

template <>
struct std::hash<causal_rules::ItemSet> {
  std::size_t operator()(const causal_rules::ItemSet& s) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto id : s) {
      h ^= id.index + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};
