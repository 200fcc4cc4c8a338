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

#include "causal_rules/bootstrap.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "causal_rules/random.hpp"

namespace causal_rules {

AllReplicatesInestimable::AllReplicatesInestimable()
    : std::runtime_error("no bootstrap replicate produced an estimable ATT") {}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) return std::nan("");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * std::clamp(q, 0.0, 1.0);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

BootstrapResult bootstrap(const EstimationContext& ctx, Method method,
                          const EstimatorOptions& estimator, const BootstrapOptions& options) {
  const Dataset& ds = ctx.data();
  const std::size_t n = ds.n();
  std::vector<double> atts(options.replicates, std::nan(""));

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    std::vector<std::size_t> rows(n);
    for (std::size_t r = next++; r < options.replicates; r = next++) {
      Rng rng(derive_seed(options.seed, {r}));
      for (auto& row : rows) row = rng.below(n);
      const Dataset replicate = ds.resample(rows);
      const auto rctx =
          options.reclassify
              ? make_context(replicate, ctx.subpopulation, ctx.intervention, ctx.conditioning,
                             ctx.classification.alpha)
              : make_context(replicate, ctx.subpopulation, ctx.intervention, ctx.conditioning,
                             ctx.classification);
      EstimatorOptions opts = estimator;
      opts.seed = derive_seed(options.seed, {r, 1});
      const auto est = estimate(method, rctx, opts);
      if (est.estimable) atts[r] = est.att;
    }
  };
  const unsigned threads = std::max(
      1U, std::min<unsigned>(options.threads, static_cast<unsigned>(options.replicates)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  BootstrapResult result;
  result.replicates = options.replicates;
  for (double a : atts) {
    if (std::isnan(a)) {
      ++result.inestimable;
    } else {
      result.estimates.push_back(a);
    }
  }
  if (result.estimates.empty()) throw AllReplicatesInestimable();

  const double tail = (1.0 - options.level) / 2.0;
  result.point = std::accumulate(result.estimates.begin(), result.estimates.end(), 0.0) /
                 static_cast<double>(result.estimates.size());
  result.ci_low = quantile(result.estimates, tail);
  result.ci_high = quantile(result.estimates, 1.0 - tail);
  result.significant = result.ci_low > 0.0 || result.ci_high < 0.0;
  return result;
}

}  // namespace causal_rules
