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

#include "causal_rules/itemset.hpp"

#include <algorithm>
#include <iterator>

namespace causal_rules {

ItemSet::ItemSet(std::initializer_list<ItemId> items) : members_(items) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

ItemSet::ItemSet(std::vector<ItemId> items) : members_(std::move(items)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool ItemSet::contains(ItemId item) const noexcept {
  return std::binary_search(members_.begin(), members_.end(), item);
}

bool ItemSet::is_subset_of(const ItemSet& other) const noexcept {
  return std::includes(other.members_.begin(), other.members_.end(),
                       members_.begin(), members_.end());
}

bool ItemSet::is_disjoint(const ItemSet& other) const noexcept {
  auto a = members_.begin();
  auto b = other.members_.begin();
  while (a != members_.end() && b != other.members_.end()) {
    if (*a == *b) return false;
    if (*a < *b) {
      ++a;
    } else {
      ++b;
    }
  }
  return true;
}

ItemSet ItemSet::with(ItemId item) const {
  ItemSet out = *this;
  out.insert(item);
  return out;
}

ItemSet ItemSet::without(ItemId item) const {
  ItemSet out = *this;
  auto it = std::lower_bound(out.members_.begin(), out.members_.end(), item);
  if (it != out.members_.end() && *it == item) out.members_.erase(it);
  return out;
}

void ItemSet::insert(ItemId item) {
  auto it = std::lower_bound(members_.begin(), members_.end(), item);
  if (it == members_.end() || *it != item) members_.insert(it, item);
}

ItemSet operator|(const ItemSet& a, const ItemSet& b) {
  ItemSet out;
  out.members_.reserve(a.size() + b.size());
  std::set_union(a.members_.begin(), a.members_.end(), b.members_.begin(),
                 b.members_.end(), std::back_inserter(out.members_));
  return out;
}

ItemSet operator-(const ItemSet& a, const ItemSet& b) {
  ItemSet out;
  std::set_difference(a.members_.begin(), a.members_.end(), b.members_.begin(),
                      b.members_.end(), std::back_inserter(out.members_));
  return out;
}

ItemSet operator&(const ItemSet& a, const ItemSet& b) {
  ItemSet out;
  std::set_intersection(a.members_.begin(), a.members_.end(),
                        b.members_.begin(), b.members_.end(),
                        std::back_inserter(out.members_));
  return out;
}

std::strong_ordering operator<=>(const ItemSet& a, const ItemSet& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(
      a.members_.begin(), a.members_.end(), b.members_.begin(),
      b.members_.end());
}

}  // namespace causal_rules
