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

#include <benchmark/benchmark.h>

#include <vector>

#include "causal_rules/bootstrap.hpp"
#include "causal_rules/classifier.hpp"
#include "causal_rules/estimators.hpp"
#include "causal_rules/glm.hpp"
#include "causal_rules/miner.hpp"
#include "causal_rules/random.hpp"
#include "causal_rules/simulation.hpp"

namespace cr = causal_rules;

namespace {

// 3 subpopulation items, 6 interventions, 2 covariates, 1 outcome.
cr::Dataset mining_data(std::size_t n) {
  std::vector<cr::CatalogEntry> catalog;
  for (int i = 0; i < 3; ++i) catalog.push_back({"s" + std::to_string(i), cr::ItemRole::Subpopulation});
  for (int i = 0; i < 6; ++i) catalog.push_back({"x" + std::to_string(i), cr::ItemRole::Intervention});
  for (int i = 0; i < 2; ++i) catalog.push_back({"c" + std::to_string(i), cr::ItemRole::Covariate});
  catalog.push_back({"y", cr::ItemRole::Outcome});
  std::vector<cr::BitVector> columns(catalog.size(), cr::BitVector(n));
  cr::Rng rng(11);
  for (std::size_t r = 0; r < n; ++r) {
    const bool c0 = rng.bernoulli(0.3);
    const bool c1 = rng.bernoulli(0.5);
    double p = 0.2 + (c0 ? 0.1 : 0.0);
    for (std::size_t j = 0; j < 3; ++j) columns[j].set(r, rng.bernoulli(0.4));
    for (std::size_t j = 0; j < 6; ++j) {
      const bool x = rng.bernoulli(c0 ? 0.5 : 0.3);
      columns[3 + j].set(r, x);
      if (x && j < 2) p -= 0.06;
    }
    columns[9].set(r, c0);
    columns[10].set(r, c1);
    columns[11].set(r, rng.bernoulli(p));
  }
  return cr::Dataset(std::move(catalog), std::move(columns));
}

void BM_Mine(benchmark::State& state) {
  const auto ds = mining_data(20000);
  cr::MiningConfig cfg;
  cfg.min_support = 0.02;
  cfg.estimator = cr::Method::CC;
  cfg.pruning = static_cast<cr::Pruning>(state.range(0));
  state.SetLabel(std::string(cr::to_string(cfg.pruning)));
  std::size_t evaluated = 0;
  for (auto _ : state) {
    const auto result = cr::mine(ds, cfg);
    evaluated = result.stats.evaluated;
    benchmark::DoNotOptimize(result.rules.data());
  }
  state.counters["evaluated"] = static_cast<double>(evaluated);
}
BENCHMARK(BM_Mine)
    ->Arg(static_cast<int>(cr::Pruning::AprioriOnly))
    ->Arg(static_cast<int>(cr::Pruning::Posp))
    ->Arg(static_cast<int>(cr::Pruning::PospEcrp))
    ->Unit(benchmark::kMillisecond);

void BM_LogisticFit(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  cr::Rng rng(3);
  Eigen::MatrixXd x(n, 4);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < 4; ++j) x(i, j) = rng.bernoulli(0.4) ? 1.0 : 0.0;
    y[i] = rng.bernoulli(cr::inverse_logit(-1.0 + 0.5 * x(i, 0) - 0.8 * x(i, 2))) ? 1.0 : 0.0;
  }
  for (auto _ : state) benchmark::DoNotOptimize(cr::fit_logistic(x, y).coefficients.data());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LogisticFit)->Arg(1000)->Arg(100000);

void BM_Classify(benchmark::State& state) {
  const auto ds = cr::generate({cr::Scenario::V, static_cast<std::size_t>(state.range(0)), 1});
  const auto x = *ds.find("X");
  for (auto _ : state) benchmark::DoNotOptimize(cr::classify(ds, x, ds.outcome(), {}));
}
BENCHMARK(BM_Classify)->Arg(5000)->Arg(200000);

void BM_Estimator(benchmark::State& state) {
  const auto ds = cr::generate({cr::Scenario::V, 50000, 2});
  const auto ctx = cr::make_context(ds, {}, *ds.find("X"));
  const auto method = static_cast<cr::Method>(state.range(0));
  state.SetLabel(std::string(cr::to_string(method)));
  cr::EstimatorOptions opts;
  opts.seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(cr::estimate(method, ctx, opts).att);
}
BENCHMARK(BM_Estimator)
    ->Arg(static_cast<int>(cr::Method::CC))
    ->Arg(static_cast<int>(cr::Method::CM))
    ->Arg(static_cast<int>(cr::Method::PSM))
    ->Arg(static_cast<int>(cr::Method::SN))
    ->Unit(benchmark::kMicrosecond);

void BM_BootstrapPsm(benchmark::State& state) {
  const auto ds = cr::generate({cr::Scenario::III, 5000, 4});
  const auto ctx = cr::make_context(ds, {}, *ds.find("X"));
  cr::BootstrapOptions b;
  b.replicates = 100;
  b.seed = 9;
  for (auto _ : state) benchmark::DoNotOptimize(cr::bootstrap(ctx, cr::Method::PSM, {}, b).point);
}
BENCHMARK(BM_BootstrapPsm)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
