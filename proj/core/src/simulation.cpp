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

#include "causal_rules/simulation.hpp"

#include <string>

#include "causal_rules/random.hpp"

namespace causal_rules {

namespace {

constexpr double kTreatedEffect = -0.15;
constexpr double kBaseRisk = 0.25;
constexpr double kLowRisk = 0.05;  // outcome rate without Z in III to V
constexpr double kDirectBump = 0.05;
constexpr double kCovariateRate = 0.20;

}  // namespace

std::string_view to_string(Scenario scenario) noexcept {
  switch (scenario) {
    case Scenario::I:
      return "I";
    case Scenario::II:
      return "II";
    case Scenario::III:
      return "III";
    case Scenario::IV:
      return "IV";
    case Scenario::V:
      return "V";
  }
  return "I";
}

std::optional<Scenario> parse_scenario(std::string_view text) noexcept {
  for (auto s : kAllScenarios) {
    if (text == to_string(s) || text == std::to_string(static_cast<int>(s))) return s;
  }
  return std::nullopt;
}

double analytic_att(Scenario scenario) noexcept {
  switch (scenario) {
    case Scenario::I:
    case Scenario::II:
    case Scenario::III:
      return kTreatedEffect;
    case Scenario::IV:
    case Scenario::V: {
      // Only treated rows with Z respond. P(Z | X) = P(Z) / P(Z or U).
      const double p_z_or_u = 1.0 - (1.0 - kCovariateRate) * (1.0 - kCovariateRate);
      return kTreatedEffect * kCovariateRate / p_z_or_u;
    }
  }
  return kTreatedEffect;
}

double ScenarioSpec::true_att() const noexcept { return analytic_att(id); }

std::vector<std::string_view> scenario_items(Scenario scenario) {
  switch (scenario) {
    case Scenario::I:
      return {"V", "X", "Y"};
    case Scenario::II:
      return {"U", "X", "Y"};
    case Scenario::III:
      return {"Z", "X", "Y"};
    case Scenario::IV:
      return {"Z", "U", "X", "Y"};
    case Scenario::V:
      return {"Z", "U", "V", "X", "Y"};
  }
  return {};
}

Dataset generate(const ScenarioSpec& spec) {
  const auto names = scenario_items(spec.id);
  std::vector<CatalogEntry> catalog;
  std::vector<BitVector> columns;
  for (auto name : names) {
    ItemRole role = ItemRole::Covariate;
    if (name == "X") role = ItemRole::Intervention;
    if (name == "Y") role = ItemRole::Outcome;
    catalog.push_back({std::string(name), role});
    columns.emplace_back(spec.n);
  }

  // Draws within a row follow catalog order, so each scenario's stream is
  // fixed by its seed.
  Rng rng(spec.seed);
  const std::size_t width = names.size();
  const std::size_t x_col = width - 2;
  const std::size_t y_col = width - 1;
  for (std::size_t r = 0; r < spec.n; ++r) {
    bool z = false, u = false, v = false, x = false;
    double p_y = 0.0;
    switch (spec.id) {
      case Scenario::I:
        v = rng.bernoulli(kCovariateRate);
        x = rng.bernoulli(0.30);
        p_y = kBaseRisk + (x ? kTreatedEffect : 0.0) + (v ? kDirectBump : 0.0);
        break;
      case Scenario::II:
        u = rng.bernoulli(kCovariateRate);
        x = rng.bernoulli(u ? 0.95 : 0.30);
        p_y = kBaseRisk + (x ? kTreatedEffect : 0.0);
        break;
      case Scenario::III:
        z = rng.bernoulli(kCovariateRate);
        x = z && rng.bernoulli(0.95);
        p_y = z ? kBaseRisk + (x ? kTreatedEffect : 0.0) : kLowRisk;
        break;
      case Scenario::IV:
      case Scenario::V:
        z = rng.bernoulli(kCovariateRate);
        u = rng.bernoulli(kCovariateRate);
        if (spec.id == Scenario::V) v = rng.bernoulli(kCovariateRate);
        x = (z || u) && rng.bernoulli(0.95);
        p_y = z ? kBaseRisk + (x ? kTreatedEffect : 0.0) : kLowRisk;
        if (v) p_y += kDirectBump;
        break;
    }
    const bool y = rng.bernoulli(p_y);

    std::size_t c = 0;
    if (spec.id == Scenario::III || spec.id == Scenario::IV || spec.id == Scenario::V) {
      columns[c++].set(r, z);
    }
    if (spec.id == Scenario::II || spec.id == Scenario::IV || spec.id == Scenario::V) {
      columns[c++].set(r, u);
    }
    if (spec.id == Scenario::I || spec.id == Scenario::V) columns[c++].set(r, v);
    columns[x_col].set(r, x);
    columns[y_col].set(r, y);
  }
  return Dataset(std::move(catalog), std::move(columns));
}

}  // namespace causal_rules
