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
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dismet/error.hpp"

namespace dismet {

// N x K table of discrete ground-truth factor assignments. Stored column-major
// so that a single factor is a contiguous span.
class FactorTable {
 public:
  FactorTable() = default;

  // `values` is column-major: values[j * rows + n]. Throws FactorOutOfRange,
  // ShapeMismatch or LengthMismatch on invalid input.
  FactorTable(std::size_t rows, std::vector<std::int32_t> values, std::vector<std::string> names,
              std::vector<std::int32_t> cardinalities);

  static FactorTable from_rows(const std::vector<std::vector<std::int32_t>>& rows,
                               std::vector<std::string> names,
                               std::vector<std::int32_t> cardinalities);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t num_factors() const noexcept { return cardinalities_.size(); }

  std::int32_t operator()(std::size_t n, std::size_t j) const { return values_[j * rows_ + n]; }
  std::span<const std::int32_t> column(std::size_t j) const {
    return {values_.data() + j * rows_, rows_};
  }

  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<std::int32_t>& cardinalities() const noexcept { return cardinalities_; }
  std::int32_t cardinality(std::size_t j) const { return cardinalities_.at(j); }

  // Throws if any invariant is violated. Called by the constructor.
  void validate() const;

  FactorTable select_rows(std::span<const std::size_t> rows) const;

  friend bool operator==(const FactorTable&, const FactorTable&) = default;

 private:
  std::size_t rows_ = 0;
  std::vector<std::int32_t> values_;
  std::vector<std::string> names_;
  std::vector<std::int32_t> cardinalities_;
};

// N x D matrix of finite latent codes.
class RepresentationMatrix {
 public:
  RepresentationMatrix() = default;
  explicit RepresentationMatrix(Eigen::MatrixXd values);

  std::size_t rows() const noexcept { return static_cast<std::size_t>(values_.rows()); }
  std::size_t dims() const noexcept { return static_cast<std::size_t>(values_.cols()); }

  const Eigen::MatrixXd& values() const noexcept { return values_; }
  double operator()(std::size_t n, std::size_t i) const {
    return values_(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(i));
  }
  std::span<const double> column(std::size_t i) const {
    return {values_.data() + i * rows(), rows()};
  }

  RepresentationMatrix select_columns(std::span<const std::size_t> columns) const;
  RepresentationMatrix select_rows(std::span<const std::size_t> rows) const;

  void validate() const;

  friend bool operator==(const RepresentationMatrix& a, const RepresentationMatrix& b) {
    return a.values_.rows() == b.values_.rows() && a.values_.cols() == b.values_.cols() &&
           a.values_ == b.values_;
  }

 private:
  Eigen::MatrixXd values_;
};

struct Dataset {
  FactorTable factors;
  RepresentationMatrix reps;
};

// Throws RowMismatch, FactorOutOfRange or NonFiniteValue.
void check_pair(const FactorTable& factors, const RepresentationMatrix& reps);

Dataset validate_pair(FactorTable factors, RepresentationMatrix reps);

// Ascending row indices n with factors(n, j) == v.
std::vector<std::size_t> indices_with_factor_fixed(const FactorTable& factors, std::size_t j,
                                                   std::int32_t v);

// Per-seed scores of one metric with their aggregate. Scores are fractions
// (natural-base MED may be negative); percentages only appear in the display
// string.
struct MetricReport {
  std::string metric;
  std::vector<double> scores;
  double mean = 0.0;
  double std = 0.0;
  std::map<std::string, std::string> parameters;

  friend bool operator==(const MetricReport&, const MetricReport&) = default;
};

// Builds a report with mean and population standard deviation of `scores`.
MetricReport make_report(std::string metric, std::vector<double> scores,
                         std::map<std::string, std::string> parameters = {});

}  // namespace dismet
