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

#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

namespace causal_rules {

struct GlmOptions {
  /// Converged when the infinity-norm of the score vector drops below this.
  double tolerance = 1e-8;
  int max_iterations = 50;
  /// Added to the diagonal of the information matrix before each solve.
  double ridge = 1e-6;
};

enum class Link { Logit };

struct GlmFit {
  Eigen::VectorXd coefficients;  // intercept first
  Link link = Link::Logit;
  bool converged = false;
  int iterations = 0;
  double max_abs_score = std::numeric_limits<double>::infinity();

  /// Linear predictor for one row of predictors (no intercept column).
  [[nodiscard]] double linear_predictor(const Eigen::Ref<const Eigen::VectorXd>& row) const;
  [[nodiscard]] double predict(const Eigen::Ref<const Eigen::VectorXd>& row) const;
};

class CollinearDesign : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

[[nodiscard]] double inverse_logit(double eta) noexcept;

/// Logistic regression by iteratively reweighted least squares.
/// `predictors` has one row per observation and no intercept column (one is
/// prepended). `target` holds 0/1. Throws CollinearDesign when the design
/// with intercept is rank deficient. Non-convergence is reported through
/// GlmFit::converged, not thrown.
[[nodiscard]] GlmFit fit_logistic(const Eigen::MatrixXd& predictors,
                                  const Eigen::VectorXd& target,
                                  const GlmOptions& options = {});

/// Binomial form of fit_logistic: row g stands for `trials[g]` observations
/// with `successes[g]` ones among them. Rows with zero trials are ignored.
[[nodiscard]] GlmFit fit_logistic_grouped(const Eigen::MatrixXd& predictors,
                                          const Eigen::VectorXd& trials,
                                          const Eigen::VectorXd& successes,
                                          const GlmOptions& options = {});

}  // namespace causal_rules
