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

#include "causal_rules/table4.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace causal_rules {

const Table4Cell& Table4Report::cell(Scenario scenario, Method method) const {
  for (const auto& c : cells) {
    if (c.scenario == scenario && c.method == method) return c;
  }
  throw std::out_of_range("no such table cell");
}

Table4Report table4_run(const Table4Config& config) {
  constexpr std::size_t kScenarios = std::size(kAllScenarios);
  constexpr std::size_t kMethods = kAllMethods.size();
  const std::size_t jobs = kScenarios * config.seeds;

  // estimates[job][method], NaN when not estimable.
  std::vector<std::array<double, kMethods>> estimates(jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t j = next++; j < jobs; j = next++) {
      const Scenario scenario = kAllScenarios[j / config.seeds];
      const std::uint64_t seed = config.first_seed + j % config.seeds;
      const Dataset ds = generate({scenario, config.n, seed});
      const auto x = ds.find("X");
      const auto ctx = make_context(ds, {}, *x, {}, config.alpha);
      EstimatorOptions opts;
      opts.caliper = config.caliper;
      opts.min_cell = config.min_cell;
      opts.seed = seed;
      for (std::size_t m = 0; m < kMethods; ++m) {
        const auto est = estimate(kAllMethods[m], ctx, opts);
        estimates[j][m] = est.estimable ? est.att : std::nan("");
      }
    }
  };
  const unsigned threads =
      std::max(1U, std::min<unsigned>(config.threads, static_cast<unsigned>(jobs)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  Table4Report report;
  report.config = config;
  for (std::size_t s = 0; s < kScenarios; ++s) {
    for (std::size_t m = 0; m < kMethods; ++m) {
      Table4Cell c;
      c.scenario = kAllScenarios[s];
      c.method = kAllMethods[m];
      c.truth = analytic_att(c.scenario);
      double sum = 0.0;
      for (std::size_t k = 0; k < config.seeds; ++k) {
        const double a = estimates[s * config.seeds + k][m];
        if (std::isnan(a)) continue;
        sum += a;
        ++c.estimable_runs;
      }
      c.mean = c.estimable_runs > 0 ? sum / static_cast<double>(c.estimable_runs)
                                    : std::nan("");
      c.deviation = c.mean - c.truth;
      report.cells.push_back(c);
    }
  }
  return report;
}

}  // namespace causal_rules
