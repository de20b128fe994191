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

#include "dismet/mi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dismet/parallel.hpp"

namespace dismet {

namespace {

// Above this many cells the joint table is counted by sorting packed keys.
constexpr std::int64_t kDenseJointLimit = std::int64_t{1} << 20;

struct Labels {
  std::vector<std::int32_t> shifted;
  std::int64_t range = 0;
};

Labels normalize_labels(std::span<const std::int32_t> labels) {
  const auto [lo, hi] = std::minmax_element(labels.begin(), labels.end());
  Labels out;
  out.range = static_cast<std::int64_t>(*hi) - *lo + 1;
  out.shifted.resize(labels.size());
  for (std::size_t n = 0; n < labels.size(); ++n) out.shifted[n] = labels[n] - *lo;
  return out;
}

std::vector<std::int64_t> histogram(std::span<const std::int32_t> labels, std::int64_t range) {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(range), 0);
  for (std::int32_t v : labels) ++counts[static_cast<std::size_t>(v)];
  return counts;
}

// I(x; y) in nats from label vectors in [0, range_x) and [0, range_y) with
// their marginal counts. Each occupied cell contributes
// n_xy log(n_xy N / (n_x n_y)); the ratio is formed from exact integer
// products, so an independent cell contributes exactly 0. Terms are summed in
// sorted order, which makes the result invariant to relabeling and to
// swapping x and y.
double mi_from_labels(std::span<const std::int32_t> x, std::int64_t range_x,
                      const std::vector<std::int64_t>& count_x, std::span<const std::int32_t> y,
                      std::int64_t range_y, const std::vector<std::int64_t>& count_y) {
  const std::size_t n = x.size();
  std::vector<double> terms;
  const auto n_total = static_cast<std::int64_t>(n);
  const auto add_cell = [&](std::int64_t key, std::int64_t c) {
    const std::int64_t cx = count_x[static_cast<std::size_t>(key / range_y)];
    const std::int64_t cy = count_y[static_cast<std::size_t>(key % range_y)];
    const double ratio = static_cast<double>(c * n_total) / static_cast<double>(cx * cy);
    terms.push_back(static_cast<double>(c) * std::log(ratio));
  };
  if (range_x * range_y <= kDenseJointLimit) {
    std::vector<std::int64_t> counts(static_cast<std::size_t>(range_x * range_y), 0);
    for (std::size_t r = 0; r < n; ++r) {
      ++counts[static_cast<std::size_t>(x[r] * range_y + y[r])];
    }
    for (std::size_t key = 0; key < counts.size(); ++key) {
      if (counts[key] > 0) add_cell(static_cast<std::int64_t>(key), counts[key]);
    }
  } else {
    std::vector<std::int64_t> keys(n);
    for (std::size_t r = 0; r < n; ++r) keys[r] = x[r] * range_y + y[r];
    std::sort(keys.begin(), keys.end());
    std::size_t start = 0;
    for (std::size_t r = 1; r <= n; ++r) {
      if (r == n || keys[r] != keys[start]) {
        add_cell(keys[start], static_cast<std::int64_t>(r - start));
        start = r;
      }
    }
  }
  std::sort(terms.begin(), terms.end());
  double total = 0.0;
  for (double t : terms) total += t;
  return std::max(0.0, total / static_cast<double>(n));
}

// Maps labels onto [0, distinct) preserving order, so marginal tables stay
// dense whatever the label range.
Labels compact_labels(std::span<const std::int32_t> labels) {
  std::vector<std::int32_t> values(labels.begin(), labels.end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  Labels out;
  out.range = static_cast<std::int64_t>(values.size());
  out.shifted.resize(labels.size());
  for (std::size_t n = 0; n < labels.size(); ++n) {
    out.shifted[n] = static_cast<std::int32_t>(
        std::lower_bound(values.begin(), values.end(), labels[n]) - values.begin());
  }
  return out;
}

}  // namespace

double log_base_divisor(EntropyBase base, std::size_t num_factors) {
  if (base == EntropyBase::natural || num_factors < 2) return 1.0;
  return std::log(static_cast<double>(num_factors));
}

std::vector<std::int32_t> discretize(std::span<const double> column, int bins) {
  if (bins < 1) throw Error(ErrorKind::IndexOutOfRange, "bins must be positive");
  std::vector<std::int32_t> out(column.size(), 0);
  if (column.empty()) return out;
  const auto [lo_it, hi_it] = std::minmax_element(column.begin(), column.end());
  const double lo = *lo_it;
  const double width = *hi_it - lo;
  if (!(width > 0.0)) return out;
  for (std::size_t n = 0; n < column.size(); ++n) {
    const double scaled = std::floor(static_cast<double>(bins) * (column[n] - lo) / width);
    out[n] = static_cast<std::int32_t>(std::clamp(scaled, 0.0, static_cast<double>(bins - 1)));
  }
  return out;
}

double entropy_of_counts(std::vector<std::int64_t> counts, double log_divisor) {
  std::erase(counts, 0);
  std::sort(counts.begin(), counts.end());
  std::int64_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0) return 0.0;
  const double n = static_cast<double>(total);
  double h = 0.0;
  for (auto c : counts) {
    const double p = static_cast<double>(c) / n;
    h -= p * std::log(p);
  }
  return h / log_divisor;
}

double discrete_entropy(std::span<const std::int32_t> labels, double log_divisor) {
  if (labels.empty()) return 0.0;
  const Labels norm = normalize_labels(labels);
  if (norm.range > kDenseJointLimit) {
    std::vector<std::int32_t> sorted(norm.shifted);
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::int64_t> counts;
    std::size_t start = 0;
    for (std::size_t r = 1; r <= sorted.size(); ++r) {
      if (r == sorted.size() || sorted[r] != sorted[start]) {
        counts.push_back(static_cast<std::int64_t>(r - start));
        start = r;
      }
    }
    return entropy_of_counts(std::move(counts), log_divisor);
  }
  return entropy_of_counts(histogram(norm.shifted, norm.range), log_divisor);
}

double mutual_information(std::span<const std::int32_t> x, std::span<const std::int32_t> y,
                          double log_divisor) {
  if (x.size() != y.size()) {
    throw Error(ErrorKind::LengthMismatch, std::to_string(x.size()) + " vs " +
                                               std::to_string(y.size()) + " labels");
  }
  if (x.empty()) return 0.0;
  const Labels nx = compact_labels(x);
  const Labels ny = compact_labels(y);
  return mi_from_labels(nx.shifted, nx.range, histogram(nx.shifted, nx.range), ny.shifted,
                        ny.range, histogram(ny.shifted, ny.range)) /
         log_divisor;
}

MIMatrix mi_matrix(const RepresentationMatrix& reps, const FactorTable& factors, int bins,
                   EntropyBase base) {
  check_pair(factors, reps);
  const std::size_t d = reps.dims();
  const std::size_t k = factors.num_factors();

  std::vector<std::vector<std::int32_t>> codes(d);
  std::vector<std::int64_t> code_ranges(d);
  std::vector<std::vector<std::int64_t>> code_counts(d);
  std::vector<std::vector<std::int64_t>> factor_counts(k);
  MIMatrix out;
  out.base = base;
  out.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(k));
  out.code_entropies.resize(d);
  out.factor_entropies.resize(k);

  parallel_for(d, [&](std::size_t i) {
    codes[i] = discretize(reps.column(i), bins);
    code_ranges[i] = *std::max_element(codes[i].begin(), codes[i].end()) + 1;
    code_counts[i] = histogram(codes[i], code_ranges[i]);
    out.code_entropies[i] = entropy_of_counts(code_counts[i]);
  });
  for (std::size_t j = 0; j < k; ++j) {
    factor_counts[j] = histogram(factors.column(j), factors.cardinality(j));
    out.factor_entropies[j] = entropy_of_counts(factor_counts[j]);
  }

  parallel_for(d * k, [&](std::size_t cell) {
    const std::size_t i = cell / k;
    const std::size_t j = cell % k;
    out.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
        mi_from_labels(codes[i], code_ranges[i], code_counts[i], factors.column(j),
                       factors.cardinality(j), factor_counts[j]);
  });
  return out;
}

}  // namespace dismet
