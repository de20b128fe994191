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

// Reference implementations used only by the tests. They follow the textbook
// definitions directly (maps of frequencies, explicit probability ratios) and
// share no code with the library.
#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace oracle {

inline double entropy(const std::vector<int>& labels) {
  std::map<int, double> counts;
  for (int v : labels) counts[v] += 1.0;
  const double n = static_cast<double>(labels.size());
  double h = 0.0;
  for (const auto& [v, c] : counts) h -= (c / n) * std::log(c / n);
  return h;
}

// sum_xy p(x,y) log(p(x,y) / (p(x) p(y))), in nats.
inline double mutual_information(const std::vector<int>& x, const std::vector<int>& y) {
  std::map<int, double> px;
  std::map<int, double> py;
  std::map<std::pair<int, int>, double> pxy;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    px[x[i]] += 1.0 / n;
    py[y[i]] += 1.0 / n;
    pxy[{x[i], y[i]}] += 1.0 / n;
  }
  double mi = 0.0;
  for (const auto& [xy, p] : pxy) mi += p * std::log(p / (px[xy.first] * py[xy.second]));
  return mi;
}

// Equal-width binning written from the definition.
inline std::vector<int> bin(const std::vector<double>& column, int bins) {
  double lo = column[0];
  double hi = column[0];
  for (double v : column) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  std::vector<int> out;
  for (double v : column) {
    if (hi == lo) {
      out.push_back(0);
      continue;
    }
    int b = static_cast<int>(std::floor(bins * (v - lo) / (hi - lo)));
    out.push_back(std::min(b, bins - 1));
  }
  return out;
}

// MED of a D x K relevance table given as nested vectors: normalize columns,
// then rows, then weight per-row scores by row mass.
inline double med(const std::vector<std::vector<double>>& raw, double log_divisor = 1.0) {
  const std::size_t d = raw.size();
  const std::size_t k = raw.empty() ? 0 : raw[0].size();
  std::vector<double> col_sum(k, 0.0);
  for (const auto& row : raw) {
    for (std::size_t j = 0; j < k; ++j) col_sum[j] += row[j];
  }
  std::vector<std::vector<double>> r(d, std::vector<double>(k, 0.0));
  double grand = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      r[i][j] = col_sum[j] > 0 ? raw[i][j] / col_sum[j] : 0.0;
      grand += r[i][j];
    }
  }
  if (grand <= 0) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    double mass = 0.0;
    for (double v : r[i]) mass += v;
    if (mass <= 0) continue;
    double h = 0.0;
    for (double v : r[i]) {
      if (v > 0) h -= (v / mass) * std::log(v / mass);
    }
    total += (mass / grand) * (1.0 - h / log_divisor);
  }
  return total;
}

// Every row of the full grid over `cards`, last factor fastest.
inline std::vector<std::vector<int>> grid(const std::vector<int>& cards) {
  std::vector<std::vector<int>> rows{{}};
  for (int c : cards) {
    std::vector<std::vector<int>> next;
    for (const auto& prefix : rows) {
      for (int v = 0; v < c; ++v) {
        auto row = prefix;
        row.push_back(v);
        next.push_back(std::move(row));
      }
    }
    rows = std::move(next);
  }
  return rows;
}

inline double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double ab = 0.0;
  double aa = 0.0;
  double bb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  return ab / std::sqrt(aa * bb);
}

}  // namespace oracle
