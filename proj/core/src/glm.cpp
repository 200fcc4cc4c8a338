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

#include "causal_rules/glm.hpp"

#include <cmath>
#include <string>

namespace causal_rules {

double inverse_logit(double eta) noexcept {
  if (eta >= 0) return 1.0 / (1.0 + std::exp(-eta));
  const double e = std::exp(eta);
  return e / (1.0 + e);
}

double GlmFit::linear_predictor(const Eigen::Ref<const Eigen::VectorXd>& row) const {
  if (row.size() + 1 != coefficients.size()) {
    throw std::invalid_argument("predictor row has wrong length");
  }
  return coefficients[0] + coefficients.tail(row.size()).dot(row);
}

double GlmFit::predict(const Eigen::Ref<const Eigen::VectorXd>& row) const {
  return inverse_logit(linear_predictor(row));
}

namespace {

double softplus(double eta) noexcept {
  return eta > 0 ? eta + std::log1p(std::exp(-eta)) : std::log1p(std::exp(eta));
}

double log_likelihood(const Eigen::VectorXd& eta, const Eigen::VectorXd& trials,
                      const Eigen::VectorXd& successes) {
  double ll = 0;
  for (Eigen::Index i = 0; i < eta.size(); ++i) {
    if (trials[i] == 0) continue;
    ll += successes[i] * eta[i] - trials[i] * softplus(eta[i]);
  }
  return ll;
}

void check_rank(const Eigen::MatrixXd& design) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-10);
  if (qr.rank() < design.cols()) {
    throw CollinearDesign("design matrix is rank deficient (rank " +
                          std::to_string(qr.rank()) + " of " +
                          std::to_string(design.cols()) + " columns)");
  }
}

}  // namespace

GlmFit fit_logistic_grouped(const Eigen::MatrixXd& predictors, const Eigen::VectorXd& trials,
                            const Eigen::VectorXd& successes, const GlmOptions& options) {
  const Eigen::Index rows = predictors.rows();
  if (trials.size() != rows || successes.size() != rows) {
    throw std::invalid_argument("design rows and response length differ");
  }
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (!(trials[i] >= 0) || !(successes[i] >= 0) || successes[i] > trials[i]) {
      throw std::invalid_argument("successes must lie in [0, trials]");
    }
  }

  // Keep only rows that carry observations.
  Eigen::Index used = 0;
  for (Eigen::Index i = 0; i < rows; ++i) used += trials[i] > 0 ? 1 : 0;
  const Eigen::Index p = predictors.cols() + 1;
  Eigen::MatrixXd design(used, p);
  Eigen::VectorXd m(used);
  Eigen::VectorXd s(used);
  for (Eigen::Index i = 0, k = 0; i < rows; ++i) {
    if (trials[i] == 0) continue;
    design(k, 0) = 1.0;
    design.row(k).tail(p - 1) = predictors.row(i);
    m[k] = trials[i];
    s[k] = successes[i];
    ++k;
  }
  if (used == 0) throw CollinearDesign("design has no observations");
  check_rank(design);

  GlmFit fit;
  fit.coefficients = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd eta = Eigen::VectorXd::Zero(used);
  Eigen::VectorXd mu(used);
  const Eigen::MatrixXd ridge = options.ridge * Eigen::MatrixXd::Identity(p, p);

  double ll = log_likelihood(eta, m, s);
  for (;;) {
    for (Eigen::Index i = 0; i < used; ++i) mu[i] = inverse_logit(eta[i]);
    const Eigen::VectorXd score = design.transpose() * (s - m.cwiseProduct(mu));
    fit.max_abs_score = score.cwiseAbs().maxCoeff();
    if (fit.max_abs_score < options.tolerance) {
      fit.converged = true;
      break;
    }
    if (fit.iterations >= options.max_iterations) break;

    const Eigen::VectorXd w = m.cwiseProduct(mu.cwiseProduct((1.0 - mu.array()).matrix()));
    const Eigen::MatrixXd info = design.transpose() * w.asDiagonal() * design + ridge;
    Eigen::VectorXd step = info.ldlt().solve(score);

    // Step halving keeps the log-likelihood from decreasing.
    Eigen::VectorXd candidate = fit.coefficients + step;
    Eigen::VectorXd candidate_eta = design * candidate;
    double candidate_ll = log_likelihood(candidate_eta, m, s);
    for (int halvings = 0;
         halvings < 30 && candidate_ll < ll - 1e-12 * (1.0 + std::abs(ll)); ++halvings) {
      step *= 0.5;
      candidate = fit.coefficients + step;
      candidate_eta = design * candidate;
      candidate_ll = log_likelihood(candidate_eta, m, s);
    }
    fit.coefficients = std::move(candidate);
    eta = std::move(candidate_eta);
    ll = candidate_ll;
    ++fit.iterations;
  }
  return fit;
}

GlmFit fit_logistic(const Eigen::MatrixXd& predictors, const Eigen::VectorXd& target,
                    const GlmOptions& options) {
  for (Eigen::Index i = 0; i < target.size(); ++i) {
    if (target[i] != 0.0 && target[i] != 1.0) {
      throw std::invalid_argument("logistic target must be 0/1");
    }
  }
  return fit_logistic_grouped(predictors, Eigen::VectorXd::Ones(target.size()), target,
                              options);
}

}  // namespace causal_rules
