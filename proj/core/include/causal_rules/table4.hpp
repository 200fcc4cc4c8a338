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
#include <vector>

#include "causal_rules/classifier.hpp"
#include "causal_rules/estimators.hpp"
#include "causal_rules/simulation.hpp"

namespace causal_rules {

struct Table4Config {
  std::size_t n = 5000;
  std::size_t seeds = 10;
  /// Seeds used are first_seed, first_seed + 1, ...
  std::uint64_t first_seed = 1;
  double alpha = kDefaultAlpha;
  double caliper = 0.1;
  std::size_t min_cell = 5;
  unsigned threads = 1;
};

struct Table4Cell {
  Scenario scenario = Scenario::I;
  Method method = Method::CC;
  double mean = 0.0;  // over estimable runs; NaN when there are none
  std::size_t estimable_runs = 0;
  double truth = 0.0;
  double deviation = 0.0;  // mean - truth
};

struct Table4Report {
  Table4Config config;
  std::vector<Table4Cell> cells;  // scenario-major, methods in kAllMethods order

  [[nodiscard]] const Table4Cell& cell(Scenario scenario, Method method) const;
};

/// Every method on every scenario, averaged over seeds. Each run classifies
/// the covariates of its own dataset.
[[nodiscard]] Table4Report table4_run(const Table4Config& config);

}  // namespace causal_rules
