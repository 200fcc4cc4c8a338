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
#include <stdexcept>
#include <vector>

#include "causal_rules/estimators.hpp"

namespace causal_rules {

class AllReplicatesInestimable : public std::runtime_error {
 public:
  AllReplicatesInestimable();
};

struct BootstrapOptions {
  std::size_t replicates = 500;
  std::uint64_t seed = 0;
  double level = 0.95;
  unsigned threads = 1;
  /// Re-run covariate classification on every replicate at the context's
  /// alpha. When false the context's classification is reused as given.
  bool reclassify = true;
};

struct BootstrapResult {
  std::size_t replicates = 0;
  std::size_t inestimable = 0;
  std::vector<double> estimates;  // replicate order, inestimable ones skipped
  double point = 0.0;             // mean of estimates
  double ci_low = 0.0;
  double ci_high = 0.0;
  bool significant = false;  // CI excludes 0
};

/// Percentile bootstrap. Every replicate resamples n rows with replacement
/// and reruns the estimator from scratch (outcome and propensity models are
/// refit, PSM rematches), keeping the covariate classification of `ctx`.
/// Replicate r draws from a generator seeded by (seed, r), so the result
/// does not depend on the thread count.
[[nodiscard]] BootstrapResult bootstrap(const EstimationContext& ctx, Method method,
                                        const EstimatorOptions& estimator,
                                        const BootstrapOptions& options);

/// Type-7 sample quantile of an unsorted sample; q in [0, 1].
[[nodiscard]] double quantile(std::vector<double> values, double q);

}  // namespace causal_rules
