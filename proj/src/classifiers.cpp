// Copyright 2026 The dismet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dismet/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dismet {

Standardizer Standardizer::fit(const Eigen::MatrixXd& x) {
  Standardizer s;
  const double n = static_cast<double>(x.rows());
  s.mean = x.colwise().mean();
  s.scale = Eigen::RowVectorXd::Ones(x.cols());
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    const double var = (x.col(c).array() - s.mean(c)).square().sum() / n;
    if (var > 0.0) s.scale(c) = std::sqrt(var);
  }
  return s;
}

Eigen::MatrixXd Standardizer::apply(const Eigen::MatrixXd& x) const {
  return (x.rowwise() - mean).array().rowwise() / scale.array();
}

void LogisticRegression::fit(const Eigen::MatrixXd& x, std::span<const std::int32_t> labels,
                             int num_classes) {
  standardizer_ = Standardizer::fit(x);
  const Eigen::MatrixXd xs = standardizer_.apply(x);
  const Eigen::Index n = xs.rows();
  const Eigen::Index c = num_classes;
  Eigen::MatrixXd onehot = Eigen::MatrixXd::Zero(n, c);
  for (Eigen::Index r = 0; r < n; ++r) onehot(r, labels[static_cast<std::size_t>(r)]) = 1.0;

  weights_ = Eigen::MatrixXd::Zero(xs.cols(), c);
  bias_ = Eigen::RowVectorXd::Zero(c);
  Eigen::MatrixXd probs(n, c);
  for (int epoch = 0; epoch < config_.epochs; ++epoch) {
    probs = (xs * weights_).rowwise() + bias_;
    for (Eigen::Index r = 0; r < n; ++r) {
      const double top = probs.row(r).maxCoeff();
      probs.row(r) = (probs.row(r).array() - top).exp();
      probs.row(r) /= probs.row(r).sum();
    }
    const Eigen::MatrixXd residual = (probs - onehot) / static_cast<double>(n);
    const Eigen::MatrixXd grad_w = xs.transpose() * residual + config_.l2 * weights_;
    const Eigen::RowVectorXd grad_b = residual.colwise().sum();
    weights_ -= config_.learning_rate * grad_w;
    bias_ -= config_.learning_rate * grad_b;
  }
}

std::vector<std::int32_t> LogisticRegression::predict(const Eigen::MatrixXd& x) const {
  const Eigen::MatrixXd logits = (standardizer_.apply(x) * weights_).rowwise() + bias_;
  std::vector<std::int32_t> out(static_cast<std::size_t>(logits.rows()));
  for (Eigen::Index r = 0; r < logits.rows(); ++r) {
    Eigen::Index best = 0;
    logits.row(r).maxCoeff(&best);
    out[static_cast<std::size_t>(r)] = static_cast<std::int32_t>(best);
  }
  return out;
}

double LogisticRegression::accuracy(const Eigen::MatrixXd& x,
                                    std::span<const std::int32_t> labels) const {
  if (labels.empty()) return 0.0;
  const auto predicted = predict(x);
  std::size_t hits = 0;
  for (std::size_t r = 0; r < labels.size(); ++r) hits += predicted[r] == labels[r];
  return static_cast<double>(hits) / static_cast<double>(labels.size());
}

LassoFit lasso_coordinate_descent(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                  LassoConfig config) {
  const Eigen::Index n = x.rows();
  const Eigen::Index d = x.cols();
  const double inv_n = 1.0 / static_cast<double>(n);
  Eigen::VectorXd col_ms(d);
  for (Eigen::Index i = 0; i < d; ++i) col_ms(i) = x.col(i).squaredNorm() * inv_n;

  LassoFit fit;
  fit.coefficients = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd residual = y;
  for (int it = 0; it < config.max_iterations; ++it) {
    double max_delta = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
      if (!(col_ms(i) > 0.0)) continue;
      const double w_old = fit.coefficients(i);
      const double rho = x.col(i).dot(residual) * inv_n + col_ms(i) * w_old;
      const double shrunk = std::copysign(std::max(std::abs(rho) - config.lambda, 0.0), rho);
      const double w_new = shrunk / col_ms(i);
      const double delta = w_new - w_old;
      if (delta != 0.0) {
        residual -= delta * x.col(i);
        fit.coefficients(i) = w_new;
        max_delta = std::max(max_delta, std::abs(delta));
      }
    }
    fit.iterations = it + 1;
    if (max_delta < config.tolerance) {
      fit.converged = true;
      break;
    }
  }
  return fit;
}

DecisionStump DecisionStump::fit(std::span<const double> x,
                                 std::span<const std::uint8_t> positive) {
  DecisionStump stump;
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

  double pos_total = 0.0;
  for (auto p : positive) pos_total += p;
  const double neg_total = static_cast<double>(n) - pos_total;
  if (n == 0 || pos_total == 0.0 || neg_total == 0.0) return stump;

  // Start with everything predicted positive (threshold below the minimum).
  stump.threshold = x[order.front()] - 1.0;
  stump.positive_above = true;
  stump.train_balanced_accuracy = 0.5;
  double pos_below = 0.0;
  double neg_below = 0.0;
  for (std::size_t r = 0; r + 1 < n; ++r) {
    const std::size_t idx = order[r];
    if (positive[idx]) {
      pos_below += 1.0;
    } else {
      neg_below += 1.0;
    }
    const double here = x[idx];
    const double next = x[order[r + 1]];
    if (!(next > here)) continue;
    // Rule "x > t": TP = positives above, TN = negatives at or below.
    const double above = 0.5 * ((pos_total - pos_below) / pos_total + neg_below / neg_total);
    const double score = std::max(above, 1.0 - above);
    if (score > stump.train_balanced_accuracy) {
      stump.train_balanced_accuracy = score;
      const double mid = here + 0.5 * (next - here);
      stump.threshold = mid < next ? mid : here;
      stump.positive_above = above >= 1.0 - above;
    }
  }
  return stump;
}

double DecisionStump::balanced_accuracy(std::span<const double> x,
                                        std::span<const std::uint8_t> positive) const {
  double tp = 0.0, tn = 0.0, pos = 0.0, neg = 0.0;
  for (std::size_t r = 0; r < x.size(); ++r) {
    const bool predicted = predict(x[r]);
    if (positive[r]) {
      pos += 1.0;
      tp += predicted;
    } else {
      neg += 1.0;
      tn += !predicted;
    }
  }
  if (pos == 0.0 || neg == 0.0) return -1.0;
  return 0.5 * (tp / pos + tn / neg);
}

}  // namespace dismet
