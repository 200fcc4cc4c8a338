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

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "causal_rules/dataset.hpp"
#include "causal_rules/estimators.hpp"
#include "causal_rules/miner.hpp"
#include "causal_rules/bootstrap.hpp"
#include "causal_rules/table4.hpp"

namespace causal_rules::cli {

/// Rounds to 6 significant digits. Non-finite values become JSON null.
[[nodiscard]] nlohmann::json number(double value);

/// Serializes like nlohmann::json::dump, but floats use the shortest
/// round-trip form, so number() values print with at most 6 digits.
[[nodiscard]] std::string to_text(const nlohmann::json& j, int indent = -1);

/// printf-style "%.6g".
[[nodiscard]] std::string format_number(double value);

/// Subcommand, resolved configuration, dataset fingerprint, seed, tool
/// version and wall time. Embedded in JSON reports and written next to
/// every CSV.
struct RunManifest {
  std::string subcommand;
  nlohmann::json config = nlohmann::json::object();
  std::optional<std::uint64_t> dataset_fingerprint;
  std::optional<std::uint64_t> seed;
  std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

  [[nodiscard]] nlohmann::json to_json() const;
};

[[nodiscard]] nlohmann::json names(const Dataset& ds, const ItemSet& items);
[[nodiscard]] nlohmann::json to_json(const AttEstimate& estimate);
[[nodiscard]] nlohmann::json to_json(const BootstrapResult& result);
[[nodiscard]] nlohmann::json to_json(const Dataset& ds, const CausalRule& rule);
[[nodiscard]] nlohmann::json to_json(const MiningStats& stats);

/// One line per scenario: truth and every method's mean, then deviations.
void write_table4_csv(const Table4Report& report, std::ostream& out);
void write_table4_text(const Table4Report& report, std::ostream& out);

}  // namespace causal_rules::cli
