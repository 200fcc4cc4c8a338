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

#include "causal_rules/dataset.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace causal_rules {

std::string_view to_string(ItemRole role) noexcept {
  switch (role) {
    case ItemRole::Subpopulation:
      return "subpopulation";
    case ItemRole::Intervention:
      return "intervention";
    case ItemRole::Outcome:
      return "outcome";
    case ItemRole::Covariate:
      return "covariate";
  }
  return "covariate";
}

std::optional<ItemRole> parse_role(std::string_view text) noexcept {
  if (text == "subpopulation") return ItemRole::Subpopulation;
  if (text == "intervention") return ItemRole::Intervention;
  if (text == "outcome") return ItemRole::Outcome;
  if (text == "covariate") return ItemRole::Covariate;
  return std::nullopt;
}

MissingRoleForItem::MissingRoleForItem(std::string item)
    : DataError("roles file has no entry for item '" + item + "'"),
      item_(std::move(item)) {}

NonBinaryCell::NonBinaryCell(std::size_t row, std::string column, std::string value)
    : DataError("non-binary cell '" + value + "' at row " + std::to_string(row) +
                ", column '" + column + "'"),
      row_(row),
      column_(std::move(column)) {}

DuplicateItemName::DuplicateItemName(std::string item)
    : DataError("duplicate item name '" + item + "'"), item_(std::move(item)) {}

EmptyDataset::EmptyDataset() : DataError("dataset has no rows") {}

OverlappingSets::OverlappingSets()
    : std::invalid_argument("all_true and all_false item sets overlap") {}

// ---------------------------------------------------------------------------

BitVector::BitVector(std::size_t size, bool value)
    : words_((size + 63) / 64, value ? ~std::uint64_t{0} : 0), size_(size) {
  if (value && size % 64 != 0) {
    words_.back() &= (std::uint64_t{1} << (size % 64)) - 1;
  }
}

std::size_t BitVector::count() const noexcept {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

BitVector& BitVector::operator&=(const BitVector& other) {
  if (other.size_ != size_) throw std::invalid_argument("BitVector size mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

BitVector& BitVector::and_not(const BitVector& other) {
  if (other.size_ != size_) throw std::invalid_argument("BitVector size mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

// ---------------------------------------------------------------------------

Dataset Dataset::from_rows(std::vector<CatalogEntry> catalog,
                           std::span<const Observation> rows) {
  std::vector<RowMask> columns(catalog.size(), RowMask(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != catalog.size()) {
      throw std::invalid_argument("row " + std::to_string(r) + " has width " +
                                  std::to_string(rows[r].size()) + ", expected " +
                                  std::to_string(catalog.size()));
    }
    rows[r].for_each_set([&](std::size_t c) { columns[c].set(r); });
  }
  if (rows.empty()) throw EmptyDataset();
  return Dataset(std::move(catalog), std::move(columns));
}

Dataset::Dataset(std::vector<CatalogEntry> catalog, std::vector<RowMask> columns)
    : catalog_(std::move(catalog)), columns_(std::move(columns)) {
  if (columns_.size() != catalog_.size()) {
    throw std::invalid_argument("column count does not match catalog size");
  }
  n_ = columns_.empty() ? 0 : columns_.front().size();
  for (const auto& col : columns_) {
    if (col.size() != n_) throw std::invalid_argument("columns differ in length");
  }
  validate_catalog();
}

void Dataset::validate_catalog() const {
  if (n_ == 0) throw EmptyDataset();
  std::set<std::string_view> seen;
  for (const auto& entry : catalog_) {
    if (!seen.insert(entry.name).second) throw DuplicateItemName(entry.name);
  }
}

void Dataset::check_item(ItemId item) const {
  if (item.index >= catalog_.size()) {
    throw std::out_of_range("item index " + std::to_string(item.index) +
                            " outside catalog of size " + std::to_string(catalog_.size()));
  }
}

const std::string& Dataset::name(ItemId item) const {
  check_item(item);
  return catalog_[item.index].name;
}

ItemRole Dataset::role(ItemId item) const {
  check_item(item);
  return catalog_[item.index].role;
}

std::optional<ItemId> Dataset::find(std::string_view name) const noexcept {
  for (std::size_t i = 0; i < catalog_.size(); ++i) {
    if (catalog_[i].name == name) return ItemId(static_cast<std::uint32_t>(i));
  }
  return std::nullopt;
}

ItemSet Dataset::items_with_role(ItemRole role) const {
  std::vector<ItemId> ids;
  for (std::size_t i = 0; i < catalog_.size(); ++i) {
    if (catalog_[i].role == role) ids.emplace_back(static_cast<std::uint32_t>(i));
  }
  return ItemSet(std::move(ids));
}

ItemSet Dataset::all_items() const {
  std::vector<ItemId> ids;
  ids.reserve(catalog_.size());
  for (std::size_t i = 0; i < catalog_.size(); ++i) {
    ids.emplace_back(static_cast<std::uint32_t>(i));
  }
  return ItemSet(std::move(ids));
}

ItemId Dataset::outcome() const {
  const ItemSet outcomes = items_with_role(ItemRole::Outcome);
  if (outcomes.size() != 1) {
    throw InvalidRoles("expected exactly one outcome item, found " +
                       std::to_string(outcomes.size()));
  }
  return outcomes[0];
}

bool Dataset::value(std::size_t row, ItemId item) const {
  check_item(item);
  if (row >= n_) throw std::out_of_range("row index out of range");
  return columns_[item.index].test(row);
}

Observation Dataset::row(std::size_t index) const {
  if (index >= n_) throw std::out_of_range("row index out of range");
  Observation obs(catalog_.size());
  for (std::size_t c = 0; c < catalog_.size(); ++c) {
    obs.set(c, columns_[c].test(index));
  }
  return obs;
}

const RowMask& Dataset::column(ItemId item) const {
  check_item(item);
  return columns_[item.index];
}

RowMask Dataset::rows_where(const ItemSet& all_true, const ItemSet& all_false) const {
  if (!all_true.is_disjoint(all_false)) throw OverlappingSets();
  RowMask mask(n_, true);
  for (auto item : all_true) mask &= column(item);
  for (auto item : all_false) mask.and_not(column(item));
  return mask;
}

Dataset Dataset::resample(std::span<const std::size_t> rows) const {
  std::vector<RowMask> cols(catalog_.size(), RowMask(rows.size()));
  for (std::size_t c = 0; c < catalog_.size(); ++c) {
    const auto& src = columns_[c];
    auto& dst = cols[c];
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r] >= n_) throw std::out_of_range("resample row out of range");
      if (src.test(rows[r])) dst.set(r);
    }
  }
  return Dataset(catalog_, std::move(cols));
}

std::size_t count_where(const Dataset& ds, const ItemSet& all_true, const ItemSet& all_false) {
  return ds.rows_where(all_true, all_false).count();
}

double support(const Dataset& ds, const ItemSet& items) {
  if (items.empty()) return 1.0;
  return static_cast<double>(count_where(ds, items, {})) / static_cast<double>(ds.n());
}

LoadSummary summarize(const Dataset& ds) {
  LoadSummary s;
  s.rows = ds.n();
  s.columns = ds.width();
  for (const auto& entry : ds.catalog()) ++s.role_counts[entry.role];
  return s;
}

// ---------------------------------------------------------------------------
// File formats
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> split_line(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  return out;
}

}  // namespace

RoleMap parse_roles(std::istream& json) {
  nlohmann::json doc;
  try {
    json >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidRoles(std::string("roles file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidRoles("roles file must be a JSON object");
  RoleMap roles;
  for (const auto& [name, value] : doc.items()) {
    if (!value.is_string()) {
      throw InvalidRoles("role for '" + name + "' must be a string");
    }
    auto role = parse_role(value.get<std::string>());
    if (!role) {
      throw InvalidRoles("unknown role '" + value.get<std::string>() + "' for item '" +
                         name + "'");
    }
    roles.emplace(name, *role);
  }
  return roles;
}

Dataset parse_csv(std::istream& csv, const RoleMap& roles) {
  std::string line;
  if (!std::getline(csv, line)) throw EmptyDataset();
  const auto header = split_line(line);

  std::vector<CatalogEntry> catalog;
  std::set<std::string_view> seen;
  for (const auto& name : header) {
    if (!seen.insert(name).second) throw DuplicateItemName(name);
  }
  for (const auto& name : header) {
    auto it = roles.find(name);
    if (it == roles.end()) throw MissingRoleForItem(name);
    catalog.push_back({name, it->second});
  }
  for (const auto& [name, role] : roles) {
    if (!seen.contains(name)) {
      throw InvalidRoles("roles file names item '" + name + "' absent from the CSV header");
    }
  }
  const auto outcomes = std::count_if(catalog.begin(), catalog.end(), [](const auto& e) {
    return e.role == ItemRole::Outcome;
  });
  if (outcomes != 1) {
    throw InvalidRoles("expected exactly one outcome item, found " + std::to_string(outcomes));
  }

  std::vector<Observation> rows;
  std::size_t row_number = 0;
  while (std::getline(csv, line)) {
    if (line.empty() || line == "\r") continue;
    ++row_number;
    const auto cells = split_line(line);
    if (cells.size() != header.size()) {
      throw DataError("row " + std::to_string(row_number) + " has " +
                      std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(header.size()));
    }
    Observation obs(header.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (cells[c] == "1") {
        obs.set(c);
      } else if (cells[c] != "0") {
        throw NonBinaryCell(row_number, header[c], cells[c]);
      }
    }
    rows.push_back(std::move(obs));
  }
  if (rows.empty()) throw EmptyDataset();
  return Dataset::from_rows(std::move(catalog), rows);
}

Dataset load_csv(const std::filesystem::path& csv_path,
                 const std::filesystem::path& roles_path) {
  auto roles_in = open_input(roles_path);
  const RoleMap roles = parse_roles(roles_in);
  auto csv_in = open_input(csv_path);
  return parse_csv(csv_in, roles);
}

void write_csv(const Dataset& ds, std::ostream& csv) {
  const auto& catalog = ds.catalog();
  for (std::size_t c = 0; c < catalog.size(); ++c) {
    csv << (c ? "," : "") << catalog[c].name;
  }
  csv << '\n';
  std::string line;
  for (std::size_t r = 0; r < ds.n(); ++r) {
    line.clear();
    for (std::size_t c = 0; c < catalog.size(); ++c) {
      if (c) line.push_back(',');
      line.push_back(ds.column(ItemId(static_cast<std::uint32_t>(c))).test(r) ? '1' : '0');
    }
    csv << line << '\n';
  }
}

void write_roles(const Dataset& ds, std::ostream& json) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (const auto& entry : ds.catalog()) doc[entry.name] = std::string(to_string(entry.role));
  json << doc.dump(2) << '\n';
}

void write_csv(const Dataset& ds, const std::filesystem::path& csv_path,
               const std::filesystem::path& roles_path) {
  auto csv = open_output(csv_path);
  write_csv(ds, csv);
  auto roles = open_output(roles_path);
  write_roles(ds, roles);
}

std::uint64_t fingerprint(const Dataset& ds) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t byte) {
    h ^= byte & 0xFF;
    h *= 0x100000001b3ULL;
  };
  auto mix_word = [&mix](std::uint64_t w) {
    for (int i = 0; i < 8; ++i) mix(w >> (8 * i));
  };
  mix_word(ds.n());
  for (std::size_t c = 0; c < ds.width(); ++c) {
    const auto& entry = ds.catalog()[c];
    for (unsigned char ch : entry.name) mix(ch);
    mix(0);
    mix(static_cast<std::uint64_t>(entry.role));
    for (auto w : ds.column(ItemId(static_cast<std::uint32_t>(c))).words()) mix_word(w);
  }
  return h;
}

}  // namespace causal_rules
