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
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "causal_rules/itemset.hpp"

namespace causal_rules {

enum class ItemRole { Subpopulation, Intervention, Outcome, Covariate };

[[nodiscard]] std::string_view to_string(ItemRole role) noexcept;
[[nodiscard]] std::optional<ItemRole> parse_role(std::string_view text) noexcept;

struct CatalogEntry {
  std::string name;
  ItemRole role = ItemRole::Covariate;

  friend bool operator==(const CatalogEntry&, const CatalogEntry&) = default;
};

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MissingRoleForItem : public DataError {
 public:
  explicit MissingRoleForItem(std::string item);
  [[nodiscard]] const std::string& item() const noexcept { return item_; }

 private:
  std::string item_;
};

/// A cell that is not literally "0" or "1". `row` is 1-based over data rows
/// (the header is row 0).
class NonBinaryCell : public DataError {
 public:
  NonBinaryCell(std::size_t row, std::string column, std::string value);
  [[nodiscard]] std::size_t row() const noexcept { return row_; }
  [[nodiscard]] const std::string& column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::string column_;
};

class DuplicateItemName : public DataError {
 public:
  explicit DuplicateItemName(std::string item);
  [[nodiscard]] const std::string& item() const noexcept { return item_; }

 private:
  std::string item_;
};

class EmptyDataset : public DataError {
 public:
  EmptyDataset();
};

/// Malformed roles file: unknown role, unknown item, or outcome count != 1.
class InvalidRoles : public DataError {
 public:
  using DataError::DataError;
};

class OverlappingSets : public std::invalid_argument {
 public:
  OverlappingSets();
};

// ---------------------------------------------------------------------------
// Bit containers
// ---------------------------------------------------------------------------

/// Dense bit vector; used both for one row (Observation) and for one item's
/// column over all rows (RowMask).
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size, bool value = false);

  [[nodiscard]] std::size_t size() const noexcept { return size_; }
  [[nodiscard]] bool test(std::size_t i) const noexcept {
    return (words_[i >> 6] >> (i & 63)) & 1U;
  }
  void set(std::size_t i, bool value = true) noexcept {
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= bit;
    } else {
      words_[i >> 6] &= ~bit;
    }
  }

  [[nodiscard]] std::size_t count() const noexcept;
  [[nodiscard]] std::span<const std::uint64_t> words() const noexcept { return words_; }

  BitVector& operator&=(const BitVector& other);
  /// this &= ~other
  BitVector& and_not(const BitVector& other);

  /// Calls f(i) for every set bit in ascending order.
  template <typename F>
  void for_each_set(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t word = words_[w];
      while (word != 0) {
        const int bit = __builtin_ctzll(word);
        f(w * 64 + static_cast<std::size_t>(bit));
        word &= word - 1;
      }
    }
  }

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

/// One row; width equals the catalog size.
using Observation = BitVector;
/// One bit per dataset row.
using RowMask = BitVector;

// ---------------------------------------------------------------------------
// Dataset
// ---------------------------------------------------------------------------

/// Immutable table of binary observations over a named item catalog.
/// Stored column-major so support counting is a chain of word-wise ANDs.
class Dataset {
 public:
  /// Column-major construction: `columns[i]` holds item i over all rows.
  /// Throws EmptyDataset, DuplicateItemName, or std::invalid_argument on a
  /// shape mismatch.
  Dataset(std::vector<CatalogEntry> catalog, std::vector<RowMask> columns);

  /// Row-major construction, one Observation per row.
  [[nodiscard]] static Dataset from_rows(std::vector<CatalogEntry> catalog,
                                         std::span<const Observation> rows);

  [[nodiscard]] std::size_t n() const noexcept { return n_; }
  [[nodiscard]] std::size_t width() const noexcept { return catalog_.size(); }
  [[nodiscard]] const std::vector<CatalogEntry>& catalog() const noexcept { return catalog_; }

  [[nodiscard]] const std::string& name(ItemId item) const;
  [[nodiscard]] ItemRole role(ItemId item) const;
  [[nodiscard]] std::optional<ItemId> find(std::string_view name) const noexcept;
  [[nodiscard]] ItemSet items_with_role(ItemRole role) const;
  [[nodiscard]] ItemSet all_items() const;
  /// The unique outcome item; throws InvalidRoles when there is not exactly one.
  [[nodiscard]] ItemId outcome() const;

  [[nodiscard]] bool value(std::size_t row, ItemId item) const;
  [[nodiscard]] Observation row(std::size_t index) const;
  [[nodiscard]] const RowMask& column(ItemId item) const;

  /// Rows where every `all_true` item is 1 and every `all_false` item is 0.
  [[nodiscard]] RowMask rows_where(const ItemSet& all_true,
                                   const ItemSet& all_false = {}) const;

  /// New dataset made of the given rows (repeats allowed), same catalog.
  [[nodiscard]] Dataset resample(std::span<const std::size_t> rows) const;

  void check_item(ItemId item) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  void validate_catalog() const;

  std::vector<CatalogEntry> catalog_;
  std::vector<RowMask> columns_;
  std::size_t n_ = 0;
};

/// Number of rows with every `all_true` bit set and every `all_false` bit
/// clear. Throws OverlappingSets when the two sets intersect.
[[nodiscard]] std::size_t count_where(const Dataset& ds, const ItemSet& all_true,
                                      const ItemSet& all_false);

/// Fraction of rows containing every item; support of the empty set is 1.
[[nodiscard]] double support(const Dataset& ds, const ItemSet& items);

struct LoadSummary {
  std::size_t rows = 0;
  std::size_t columns = 0;
  std::map<ItemRole, std::size_t> role_counts;
};

[[nodiscard]] LoadSummary summarize(const Dataset& ds);

/// Item name -> role, as read from a roles file.
using RoleMap = std::map<std::string, ItemRole, std::less<>>;

[[nodiscard]] RoleMap parse_roles(std::istream& json);
[[nodiscard]] Dataset parse_csv(std::istream& csv, const RoleMap& roles);
[[nodiscard]] Dataset load_csv(const std::filesystem::path& csv_path,
                               const std::filesystem::path& roles_path);

void write_csv(const Dataset& ds, std::ostream& csv);
void write_roles(const Dataset& ds, std::ostream& json);
void write_csv(const Dataset& ds, const std::filesystem::path& csv_path,
               const std::filesystem::path& roles_path);

/// FNV-1a over catalog names, roles and all bits.
[[nodiscard]] std::uint64_t fingerprint(const Dataset& ds) noexcept;

}  // namespace causal_rules
