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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace dismet {

// Per-column standardization fitted on one matrix and applied to others.
// Constant columns are centered but not scaled.
struct Standardizer {
  Eigen::RowVectorXd mean;
  Eigen::RowVectorXd scale;

  static Standardizer fit(const Eigen::MatrixXd& x);
  Eigen::MatrixXd apply(const Eigen::MatrixXd& x) const;
};

struct LogisticConfig {
  double learning_rate = 0.1;
  int epochs = 500;
  double l2 = 1e-4;
};

// Multinomial logistic regression trained by full-batch gradient descent on
// standardized inputs, from a zero initialization.
class LogisticRegression {
 public:
  explicit LogisticRegression(LogisticConfig config = {}) : config_(config) {}

  void fit(const Eigen::MatrixXd& x, std::span<const std::int32_t> labels, int num_classes);
  std::vector<std::int32_t> predict(const Eigen::MatrixXd& x) const;
  double accuracy(const Eigen::MatrixXd& x, std::span<const std::int32_t> labels) const;

 private:
  LogisticConfig config_;
  Standardizer standardizer_;
  Eigen::MatrixXd weights_;
  Eigen::RowVectorXd bias_;
};

struct LassoConfig {
  double lambda = 0.01;
  int max_iterations = 1000;
  double tolerance = 1e-8;
};

struct LassoFit {
  Eigen::VectorXd coefficients;
  int iterations = 0;
  bool converged = false;
};

// Cyclic coordinate descent for min 1/(2n)|y - Xw|^2 + lambda |w|_1 where the
// columns of x are already standardized (unit mean square or all zero) and y
// is centered.
LassoFit lasso_coordinate_descent(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                  LassoConfig config = {});

// Single-threshold classifier for one binary target.
struct DecisionStump {
  double threshold = 0.0;
  bool positive_above = true;  // predicts positive when x > threshold
  double train_balanced_accuracy = 0.5;

  // Best split of `x` for `positive` by balanced accuracy; both directions
  // are considered and ties keep the lowest threshold.
  static DecisionStump fit(std::span<const double> x, std::span<const std::uint8_t> positive);

  bool predict(double x) const { return positive_above ? x > threshold : x <= threshold; }
  // Returns a negative value when `positive` lacks either class.
  double balanced_accuracy(std::span<const double> x, std::span<const std::uint8_t> positive) const;
};

}  // namespace dismet
