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

#include "dismet/med.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numeric>

namespace dismet {

namespace {

double row_entropy(const Eigen::MatrixXd& p, Eigen::Index row) {
  double h = 0.0;
  for (Eigen::Index j = 0; j < p.cols(); ++j) {
    const double v = p(row, j);
    if (v > 0.0) h -= v * std::log(v);
  }
  return h;
}

}  // namespace

Eigen::VectorXd dimension_scores(const Eigen::MatrixXd& relevance, double log_divisor) {
  const Eigen::Index d = relevance.rows();
  Eigen::VectorXd scores = Eigen::VectorXd::Zero(d);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(d, relevance.cols());
  for (Eigen::Index i = 0; i < d; ++i) {
    const double mass = relevance.row(i).sum();
    if (!(mass > 0.0)) continue;
    p.row(i) = relevance.row(i) / mass;
    scores(i) = 1.0 - row_entropy(p, i) / log_divisor;
  }
  return scores;
}

ImportanceMatrix importance_from_relevance(const Eigen::MatrixXd& raw, double log_divisor) {
  const Eigen::Index d = raw.rows();
  const Eigen::Index k = raw.cols();
  ImportanceMatrix out;
  out.relevance = Eigen::MatrixXd::Zero(d, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) total += raw(i, j);
    if (total > 0.0) out.relevance.col(j) = raw.col(j) / total;
  }

  out.distribution = Eigen::MatrixXd::Zero(d, k);
  out.scores = Eigen::VectorXd::Zero(d);
  out.weights = Eigen::VectorXd::Zero(d);
  out.mass = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd& mass = out.mass;
  double grand = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    mass(i) = out.relevance.row(i).sum();
    grand += mass(i);
  }
  for (Eigen::Index i = 0; i < d; ++i) {
    if (!(mass(i) > 0.0)) continue;
    out.distribution.row(i) = out.relevance.row(i) / mass(i);
    out.scores(i) = 1.0 - row_entropy(out.distribution, i) / log_divisor;
    out.weights(i) = mass(i) / grand;
  }
  return out;
}

ImportanceMatrix importance_matrix(const MIMatrix& mi) {
  return importance_from_relevance(mi.values, log_base_divisor(mi.base, mi.num_factors()));
}

// Divides once at the end so that all-ones scores give exactly 1.
double weighted_score(const ImportanceMatrix& importance) {
  double numerator = 0.0;
  double denominator = 0.0;
  for (Eigen::Index i = 0; i < importance.mass.size(); ++i) {
    numerator += importance.mass(i) * importance.scores(i);
    denominator += importance.mass(i);
  }
  return denominator > 0.0 ? numerator / denominator : 0.0;
}

double med_score(const RepresentationMatrix& reps, const FactorTable& factors, int bins,
                 EntropyBase base) {
  return weighted_score(importance_matrix(mi_matrix(reps, factors, bins, base)));
}

TopKSelection topk_select(const Eigen::MatrixXd& relevance, const Eigen::VectorXd& scores,
                          std::size_t k) {
  if (k == 0) throw Error(ErrorKind::IndexOutOfRange, "k must be at least 1");
  const Eigen::Index d = relevance.rows();
  const Eigen::Index factors = relevance.cols();
  TopKSelection sel;
  sel.k = k;
  sel.groups.resize(static_cast<std::size_t>(factors));
  sel.picked_per_factor.resize(static_cast<std::size_t>(factors));
  for (Eigen::Index i = 0; i < d; ++i) {
    if (!(relevance.row(i).sum() > 0.0)) continue;
    Eigen::Index best = 0;
    for (Eigen::Index j = 1; j < factors; ++j) {
      if (relevance(i, j) > relevance(i, best)) best = j;
    }
    sel.groups[static_cast<std::size_t>(best)].push_back(static_cast<std::size_t>(i));
  }
  for (std::size_t j = 0; j < sel.groups.size(); ++j) {
    std::vector<std::size_t> members = sel.groups[j];
    std::stable_sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
      return scores(static_cast<Eigen::Index>(a)) > scores(static_cast<Eigen::Index>(b));
    });
    if (members.size() > k) members.resize(k);
    std::sort(members.begin(), members.end());
    sel.picked.insert(sel.picked.end(), members.begin(), members.end());
    sel.picked_per_factor[j] = std::move(members);
  }
  std::sort(sel.picked.begin(), sel.picked.end());
  return sel;
}

TopKResult topk_evaluate(const RepresentationMatrix& reps, const FactorTable& factors,
                         std::size_t k, int bins, EntropyBase base) {
  const ImportanceMatrix full = importance_matrix(mi_matrix(reps, factors, bins, base));
  TopKResult result;
  result.selection = topk_select(full.relevance, full.scores, k);
  if (result.selection.picked.empty()) {
    throw Error(ErrorKind::EmptySelection, "no dimension carries information about any factor");
  }
  const RepresentationMatrix sub = reps.select_columns(result.selection.picked);
  result.score = med_score(sub, factors, bins, base);
  return result;
}

double topk_med(const RepresentationMatrix& reps, const FactorTable& factors, std::size_t k,
                int bins, EntropyBase base) {
  return topk_evaluate(reps, factors, k, bins, base).score;
}

Eigen::MatrixXd cooccurrence(const Eigen::MatrixXd& restricted_mi) {
  const Eigen::Index k = restricted_mi.cols();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(k, k);
  Eigen::VectorXd norms(k);
  for (Eigen::Index j = 0; j < k; ++j) norms(j) = restricted_mi.col(j).norm();
  for (Eigen::Index a = 0; a < k; ++a) {
    if (!(norms(a) > 0.0)) continue;
    for (Eigen::Index b = 0; b < k; ++b) {
      if (!(norms(b) > 0.0)) continue;
      out(a, b) = a == b ? 1.0
                         : std::min(1.0, restricted_mi.col(a).dot(restricted_mi.col(b)) /
                                             (norms(a) * norms(b)));
    }
  }
  return out;
}

Eigen::MatrixXd heatmap(const ImportanceMatrix& importance) {
  Eigen::MatrixXd out = importance.relevance.transpose();
  for (Eigen::Index j = 0; j < out.rows(); ++j) {
    const double total = out.row(j).sum();
    if (total > 0.0) out.row(j) /= total;
  }
  return out;
}

std::vector<double> manipulation_variance(const RepresentationMatrix& reps,
                                          const FactorTable& factors, std::size_t factor,
                                          ManipulationOptions options) {
  check_pair(factors, reps);
  const std::size_t k = factors.num_factors();
  if (factor >= k) throw Error(ErrorKind::IndexOutOfRange, "factor " + std::to_string(factor));
  const std::size_t n = factors.rows();

  // Grid check: every combination must occur equally often.
  std::size_t cells = 1;
  for (std::size_t j = 0; j < k; ++j) {
    cells *= static_cast<std::size_t>(factors.cardinality(j));
    if (cells > n) throw Error(ErrorKind::NotAGrid, "fewer rows than factor combinations");
  }
  std::vector<std::size_t> cell_counts(cells, 0);
  // Key of the other factors only, in row-major order.
  std::size_t groups = cells / static_cast<std::size_t>(factors.cardinality(factor));
  std::vector<std::vector<std::size_t>> members(groups);
  for (std::size_t r = 0; r < n; ++r) {
    std::size_t full = 0;
    std::size_t other = 0;
    for (std::size_t j = 0; j < k; ++j) {
      const auto v = static_cast<std::size_t>(factors(r, j));
      full = full * static_cast<std::size_t>(factors.cardinality(j)) + v;
      if (j != factor) other = other * static_cast<std::size_t>(factors.cardinality(j)) + v;
    }
    ++cell_counts[full];
    members[other].push_back(r);
  }
  if (cell_counts.front() == 0 ||
      std::any_of(cell_counts.begin(), cell_counts.end(),
                  [&](std::size_t c) { return c != cell_counts.front(); })) {
    throw Error(ErrorKind::NotAGrid, "factor combinations are missing or unbalanced");
  }

  std::size_t first = 0;
  std::size_t last = groups;
  if (options.mode == ManipulationMode::single) {
    if (options.assignment >= groups) {
      throw Error(ErrorKind::IndexOutOfRange,
                  "assignment " + std::to_string(options.assignment) + " of " +
                      std::to_string(groups));
    }
    first = options.assignment;
    last = first + 1;
  }

  const std::size_t d = reps.dims();
  std::vector<double> profile(d, 0.0);
  for (std::size_t g = first; g < last; ++g) {
    const auto& rows = members[g];
    const double m = static_cast<double>(rows.size());
    for (std::size_t i = 0; i < d; ++i) {
      double mean = 0.0;
      for (std::size_t r : rows) mean += reps(r, i);
      mean /= m;
      double var = 0.0;
      for (std::size_t r : rows) var += (reps(r, i) - mean) * (reps(r, i) - mean);
      profile[i] += var / m;
    }
  }
  const double used = static_cast<double>(last - first);
  for (double& v : profile) v /= used;
  return profile;
}

PcaResult pca_reduce(const RepresentationMatrix& reps, std::size_t target_dim) {
  const std::size_t n = reps.rows();
  const std::size_t d = reps.dims();
  if (target_dim == 0 || target_dim > std::min(n, d)) {
    throw Error(ErrorKind::IndexOutOfRange, "target dimension " + std::to_string(target_dim) +
                                                " must lie in [1, min(N, D)]");
  }
  const Eigen::MatrixXd& x = reps.values();
  const Eigen::RowVectorXd mean = x.colwise().mean();
  const Eigen::MatrixXd centered = x.rowwise() - mean;
  const double denom = n > 1 ? static_cast<double>(n - 1) : 1.0;
  const Eigen::MatrixXd cov = (centered.transpose() * centered) / denom;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  const Eigen::VectorXd& evals = solver.eigenvalues();  // ascending
  const Eigen::MatrixXd& evecs = solver.eigenvectors();
  const double top = std::max(evals(evals.size() - 1), 0.0);
  const double tolerance =
      top * static_cast<double>(std::max(n, d)) * std::numeric_limits<double>::epsilon();

  PcaResult out;
  const auto t = static_cast<Eigen::Index>(target_dim);
  out.components = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d), t);
  out.variances = Eigen::VectorXd::Zero(t);
  for (Eigen::Index c = 0; c < t; ++c) {
    const Eigen::Index src = evals.size() - 1 - c;
    if (!(evals(src) > tolerance)) break;
    Eigen::VectorXd v = evecs.col(src);
    Eigen::Index pivot = 0;
    for (Eigen::Index i = 1; i < v.size(); ++i) {
      if (std::abs(v(i)) > std::abs(v(pivot))) pivot = i;
    }
    if (v(pivot) < 0.0) v = -v;
    out.components.col(c) = v;
    out.variances(c) = evals(src);
    ++out.rank;
  }
  out.rank_deficient = out.rank < target_dim;
  if (out.rank_deficient) {
    std::cerr << "warning: " << to_string(ErrorKind::RankDeficient) << ": numerical rank "
              << out.rank << " < " << target_dim << ", padding with zero components\n";
  }
  out.projected = RepresentationMatrix(centered * out.components);
  return out;
}

}  // namespace dismet
