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

#include "dismet/core.hpp"

#include <cmath>
#include <numeric>

namespace dismet {

FactorTable::FactorTable(std::size_t rows, std::vector<std::int32_t> values,
                         std::vector<std::string> names, std::vector<std::int32_t> cardinalities)
    : rows_(rows),
      values_(std::move(values)),
      names_(std::move(names)),
      cardinalities_(std::move(cardinalities)) {
  validate();
}

FactorTable FactorTable::from_rows(const std::vector<std::vector<std::int32_t>>& rows,
                                   std::vector<std::string> names,
                                   std::vector<std::int32_t> cardinalities) {
  const std::size_t n = rows.size();
  const std::size_t k = cardinalities.size();
  std::vector<std::int32_t> values(n * k);
  for (std::size_t r = 0; r < n; ++r) {
    if (rows[r].size() != k) {
      throw Error(ErrorKind::ShapeMismatch,
                  "row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                      " factors, expected " + std::to_string(k));
    }
    for (std::size_t j = 0; j < k; ++j) values[j * n + r] = rows[r][j];
  }
  return FactorTable(n, std::move(values), std::move(names), std::move(cardinalities));
}

void FactorTable::validate() const {
  const std::size_t k = cardinalities_.size();
  if (rows_ == 0 || k == 0) {
    throw Error(ErrorKind::ShapeMismatch, "factor table needs at least one row and one factor");
  }
  if (names_.size() != k) {
    throw Error(ErrorKind::LengthMismatch, "got " + std::to_string(names_.size()) +
                                               " factor names for " + std::to_string(k) +
                                               " factors");
  }
  if (values_.size() != rows_ * k) {
    throw Error(ErrorKind::ShapeMismatch, "factor value buffer has wrong size");
  }
  for (std::size_t j = 0; j < k; ++j) {
    const std::int32_t card = cardinalities_[j];
    if (card <= 0) {
      throw Error(ErrorKind::FactorOutOfRange,
                  "factor '" + names_[j] + "' has nonpositive cardinality");
    }
    for (std::size_t n = 0; n < rows_; ++n) {
      const std::int32_t v = values_[j * rows_ + n];
      if (v < 0 || v >= card) {
        throw Error(ErrorKind::FactorOutOfRange,
                    "row " + std::to_string(n) + ", factor '" + names_[j] + "': value " +
                        std::to_string(v) + " outside [0, " + std::to_string(card) + ")");
      }
    }
  }
}

FactorTable FactorTable::select_rows(std::span<const std::size_t> rows) const {
  const std::size_t k = num_factors();
  std::vector<std::int32_t> values(rows.size() * k);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      values[j * rows.size() + r] = (*this)(rows[r], j);
    }
  }
  return FactorTable(rows.size(), std::move(values), names_, cardinalities_);
}

RepresentationMatrix::RepresentationMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {
  validate();
}

void RepresentationMatrix::validate() const {
  for (Eigen::Index i = 0; i < values_.cols(); ++i) {
    for (Eigen::Index n = 0; n < values_.rows(); ++n) {
      if (!std::isfinite(values_(n, i))) {
        throw Error(ErrorKind::NonFiniteValue,
                    "entry (" + std::to_string(n) + ", " + std::to_string(i) + ") is not finite");
      }
    }
  }
}

RepresentationMatrix RepresentationMatrix::select_columns(
    std::span<const std::size_t> columns) const {
  Eigen::MatrixXd out(values_.rows(), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c] >= dims()) {
      throw Error(ErrorKind::IndexOutOfRange, "column " + std::to_string(columns[c]));
    }
    out.col(static_cast<Eigen::Index>(c)) = values_.col(static_cast<Eigen::Index>(columns[c]));
  }
  RepresentationMatrix result;
  result.values_ = std::move(out);
  return result;
}

RepresentationMatrix RepresentationMatrix::select_rows(std::span<const std::size_t> rows) const {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), values_.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r] >= this->rows()) {
      throw Error(ErrorKind::IndexOutOfRange, "row " + std::to_string(rows[r]));
    }
    out.row(static_cast<Eigen::Index>(r)) = values_.row(static_cast<Eigen::Index>(rows[r]));
  }
  RepresentationMatrix result;
  result.values_ = std::move(out);
  return result;
}

void check_pair(const FactorTable& factors, const RepresentationMatrix& reps) {
  if (factors.rows() != reps.rows()) {
    throw Error(ErrorKind::RowMismatch, std::to_string(factors.rows()) + " factor rows vs " +
                                            std::to_string(reps.rows()) + " representation rows");
  }
  factors.validate();
  reps.validate();
}

Dataset validate_pair(FactorTable factors, RepresentationMatrix reps) {
  check_pair(factors, reps);
  return Dataset{std::move(factors), std::move(reps)};
}

std::vector<std::size_t> indices_with_factor_fixed(const FactorTable& factors, std::size_t j,
                                                   std::int32_t v) {
  if (j >= factors.num_factors()) {
    throw Error(ErrorKind::IndexOutOfRange, "factor index " + std::to_string(j));
  }
  if (v < 0 || v >= factors.cardinality(j)) {
    throw Error(ErrorKind::IndexOutOfRange,
                "value " + std::to_string(v) + " for factor '" + factors.names()[j] + "'");
  }
  std::vector<std::size_t> out;
  const auto col = factors.column(j);
  for (std::size_t n = 0; n < col.size(); ++n) {
    if (col[n] == v) out.push_back(n);
  }
  return out;
}

MetricReport make_report(std::string metric, std::vector<double> scores,
                         std::map<std::string, std::string> parameters) {
  MetricReport report;
  report.metric = std::move(metric);
  report.parameters = std::move(parameters);
  if (!scores.empty()) {
    const double n = static_cast<double>(scores.size());
    report.mean = std::accumulate(scores.begin(), scores.end(), 0.0) / n;
    double ss = 0.0;
    for (double s : scores) ss += (s - report.mean) * (s - report.mean);
    report.std = std::sqrt(ss / n);
  }
  report.scores = std::move(scores);
  return report;
}

}  // namespace dismet
