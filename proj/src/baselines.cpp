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

#include "dismet/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dismet/med.hpp"
#include "dismet/parallel.hpp"
#include "dismet/random.hpp"

namespace dismet {

namespace {

// Rows grouped by (factor, value), restricted to values with at least two
// rows so that pairs and batches can be drawn.
class FixedFactorSampler {
 public:
  explicit FixedFactorSampler(const FactorTable& factors) {
    const std::size_t k = factors.num_factors();
    rows_.resize(k);
    eligible_.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
      rows_[j].resize(static_cast<std::size_t>(factors.cardinality(j)));
      const auto col = factors.column(j);
      for (std::size_t n = 0; n < col.size(); ++n) {
        rows_[j][static_cast<std::size_t>(col[n])].push_back(n);
      }
      for (std::size_t v = 0; v < rows_[j].size(); ++v) {
        if (rows_[j][v].size() >= 2) eligible_[j].push_back(v);
      }
      if (eligible_[j].empty()) {
        throw Error(ErrorKind::InsufficientSamples,
                    "factor '" + factors.names()[j] + "' has no value with two samples");
      }
    }
  }

  std::size_t num_factors() const { return rows_.size(); }

  // Draws the fixed factor, then its value, for one point.
  std::pair<std::size_t, const std::vector<std::size_t>*> draw_group(Xoshiro256& rng) const {
    const auto j = static_cast<std::size_t>(rng.below(rows_.size()));
    const auto& values = eligible_[j];
    const std::size_t v = values[rng.below(values.size())];
    return {j, &rows_[j][v]};
  }

 private:
  std::vector<std::vector<std::vector<std::size_t>>> rows_;
  std::vector<std::vector<std::size_t>> eligible_;
};

std::size_t pick(Xoshiro256& rng, const std::vector<std::size_t>& rows) {
  return rows[rng.below(rows.size())];
}

void require_distinct_values(const FactorTable& factors, std::span<const std::size_t> rows,
                             const char* what) {
  for (std::size_t j = 0; j < factors.num_factors(); ++j) {
    bool varied = false;
    for (std::size_t r = 1; r < rows.size() && !varied; ++r) {
      varied = factors(rows[r], j) != factors(rows[0], j);
    }
    if (!varied) {
      throw Error(ErrorKind::DegenerateFactor, std::string("factor '") + factors.names()[j] +
                                                   "' takes a single value in the " + what +
                                                   " split");
    }
  }
}

}  // namespace

double mig_from_mi(const MIMatrix& mi) {
  const std::size_t d = mi.dims();
  double total = 0.0;
  std::size_t counted = 0;
  for (std::size_t j = 0; j < mi.num_factors(); ++j) {
    const double h = mi.factor_entropies[j];
    if (!(h > 0.0)) continue;
    std::vector<double> column(d);
    for (std::size_t i = 0; i < d; ++i) {
      column[i] = mi.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    std::sort(column.begin(), column.end(), std::greater<>());
    const double top = d > 0 ? column[0] : 0.0;
    const double second = d > 1 ? column[1] : 0.0;
    total += (top - second) / h;
    ++counted;
  }
  return counted > 0 ? total / static_cast<double>(counted) : 0.0;
}

double mig(const RepresentationMatrix& reps, const FactorTable& factors, int bins) {
  return mig_from_mi(mi_matrix(reps, factors, bins));
}

Eigen::MatrixXd sap_score_matrix(const RepresentationMatrix& reps, const FactorTable& factors,
                                 const ProtocolParams& params) {
  check_pair(factors, reps);
  const std::size_t n = reps.rows();
  auto draw_rows = [&](std::uint64_t stream, std::size_t count) {
    Xoshiro256 rng = derive_stream(params.seed, "sap", stream);
    std::vector<std::size_t> rows(count);
    for (auto& r : rows) r = static_cast<std::size_t>(rng.below(n));
    return rows;
  };
  const auto train_rows = draw_rows(0, params.num_train);
  const auto eval_rows = draw_rows(1, params.num_eval);
  require_distinct_values(factors, train_rows, "training");

  const std::size_t d = reps.dims();
  const std::size_t k = factors.num_factors();
  Eigen::MatrixXd scores = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d),
                                                 static_cast<Eigen::Index>(k));
  parallel_for(d, [&](std::size_t i) {
    const auto col = reps.column(i);
    std::vector<double> x_train(train_rows.size()), x_eval(eval_rows.size());
    for (std::size_t r = 0; r < train_rows.size(); ++r) x_train[r] = col[train_rows[r]];
    for (std::size_t r = 0; r < eval_rows.size(); ++r) x_eval[r] = col[eval_rows[r]];
    std::vector<std::uint8_t> y_train(train_rows.size()), y_eval(eval_rows.size());
    for (std::size_t j = 0; j < k; ++j) {
      double sum = 0.0;
      std::size_t used = 0;
      for (std::int32_t c = 0; c < factors.cardinality(j); ++c) {
        for (std::size_t r = 0; r < train_rows.size(); ++r) {
          y_train[r] = factors(train_rows[r], j) == c;
        }
        for (std::size_t r = 0; r < eval_rows.size(); ++r) {
          y_eval[r] = factors(eval_rows[r], j) == c;
        }
        const auto stump = DecisionStump::fit(x_train, y_train);
        const double acc = stump.balanced_accuracy(x_eval, y_eval);
        if (acc < 0.0) continue;  // class absent from the eval split
        // Classes absent from training fall back to the trivial stump (0.5).
        sum += acc;
        ++used;
      }
      scores(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          used > 0 ? sum / static_cast<double>(used) : 0.5;
    }
  });
  return scores;
}

double sap_from_scores(const Eigen::MatrixXd& scores) {
  const Eigen::Index d = scores.rows();
  const Eigen::Index k = scores.cols();
  if (k == 0) return 0.0;
  double total = 0.0;
  for (Eigen::Index j = 0; j < k; ++j) {
    std::vector<double> column(scores.col(j).data(), scores.col(j).data() + d);
    std::sort(column.begin(), column.end(), std::greater<>());
    const double top = d > 0 ? column[0] : 0.0;
    const double second = d > 1 ? column[1] : 0.0;
    total += top - second;
  }
  return total / static_cast<double>(k);
}

double sap(const RepresentationMatrix& reps, const FactorTable& factors,
           const ProtocolParams& params) {
  return sap_from_scores(sap_score_matrix(reps, factors, params));
}

Eigen::MatrixXd dci_importance(const RepresentationMatrix& reps, const FactorTable& factors,
                               const DCIImportanceEstimator& estimator) {
  check_pair(factors, reps);
  const auto d = static_cast<Eigen::Index>(reps.dims());
  const auto k = static_cast<Eigen::Index>(factors.num_factors());
  if (const auto* analytic = std::get_if<AnalyticEstimator>(&estimator)) {
    if (analytic->importance.rows() != d || analytic->importance.cols() != k) {
      throw Error(ErrorKind::ShapeMismatch, "analytic importance must be D x K");
    }
    return analytic->importance.cwiseAbs();
  }
  const auto& lasso = std::get<LassoEstimator>(estimator);
  if (!(lasso.lambda > 0.0)) {
    throw Error(ErrorKind::EstimatorFailure, "lasso lambda must be positive");
  }
  const Eigen::MatrixXd x = Standardizer::fit(reps.values()).apply(reps.values());
  const LassoConfig config{lasso.lambda, lasso.max_iterations, 1e-8};

  Eigen::MatrixXd importance = Eigen::MatrixXd::Zero(d, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    const auto col = factors.column(static_cast<std::size_t>(j));
    const std::int32_t card = factors.cardinality(static_cast<std::size_t>(j));
    std::vector<Eigen::VectorXd> coefs(static_cast<std::size_t>(card));
    std::vector<int> status(static_cast<std::size_t>(card), 0);  // 0 skip, 1 ok, 2 failed
    parallel_for(static_cast<std::size_t>(card), [&](std::size_t c) {
      Eigen::VectorXd y(x.rows());
      for (Eigen::Index r = 0; r < y.size(); ++r) {
        y(r) = col[static_cast<std::size_t>(r)] == static_cast<std::int32_t>(c) ? 1.0 : 0.0;
      }
      const double mean = y.mean();
      if (mean == 0.0 || mean == 1.0) return;
      y.array() -= mean;
      const LassoFit fit = lasso_coordinate_descent(x, y, config);
      status[c] = fit.converged ? 1 : 2;
      coefs[c] = fit.coefficients.cwiseAbs();
    });
    std::size_t used = 0;
    for (std::size_t c = 0; c < coefs.size(); ++c) {
      if (status[c] == 2) {
        throw Error(ErrorKind::EstimatorFailure,
                    "lasso did not converge in " + std::to_string(lasso.max_iterations) +
                        " iterations for factor '" + factors.names()[static_cast<std::size_t>(j)] +
                        "'");
      }
      if (status[c] == 1) {
        importance.col(j) += coefs[c];
        ++used;
      }
    }
    if (used > 0) importance.col(j) /= static_cast<double>(used);
  }
  return importance;
}

double dci_from_importance(const Eigen::MatrixXd& importance, double log_divisor) {
  return weighted_score(importance_from_relevance(importance.cwiseAbs(), log_divisor));
}

double dci_disentanglement(const RepresentationMatrix& reps, const FactorTable& factors,
                           const DCIImportanceEstimator& estimator, EntropyBase base) {
  return dci_from_importance(dci_importance(reps, factors, estimator),
                             log_base_divisor(base, factors.num_factors()));
}

VoteFeatures betavae_features(const RepresentationMatrix& reps, const FactorTable& factors,
                              const ProtocolParams& params, std::size_t first,
                              std::size_t count) {
  check_pair(factors, reps);
  const FixedFactorSampler sampler(factors);
  const auto d = static_cast<Eigen::Index>(reps.dims());
  VoteFeatures out;
  out.features = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(count), d);
  out.labels.resize(count);
  const double inv_batch = 1.0 / static_cast<double>(params.batch_size);
  parallel_for(count, [&](std::size_t p) {
    Xoshiro256 rng = derive_stream(params.seed, "betavae", first + p);
    const auto [factor, rows] = sampler.draw_group(rng);
    out.labels[p] = static_cast<std::int32_t>(factor);
    Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(d);
    for (std::size_t b = 0; b < params.batch_size; ++b) {
      const std::size_t r1 = pick(rng, *rows);
      const std::size_t r2 = pick(rng, *rows);
      acc += (reps.values().row(static_cast<Eigen::Index>(r1)) -
              reps.values().row(static_cast<Eigen::Index>(r2)))
                 .cwiseAbs();
    }
    out.features.row(static_cast<Eigen::Index>(p)) = acc * inv_batch;
  });
  return out;
}

double betavae_score(const RepresentationMatrix& reps, const FactorTable& factors,
                     const ProtocolParams& params) {
  const VoteFeatures train = betavae_features(reps, factors, params, 0, params.num_train);
  const VoteFeatures eval =
      betavae_features(reps, factors, params, params.num_train, params.num_eval);
  LogisticRegression model(params.logistic);
  model.fit(train.features, train.labels, static_cast<int>(factors.num_factors()));
  return model.accuracy(eval.features, eval.labels);
}

std::vector<std::size_t> active_dimensions(const std::vector<double>& variances,
                                           double threshold) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < variances.size(); ++i) {
    if (variances[i] >= threshold) out.push_back(i);
  }
  return out;
}

namespace {

std::vector<double> global_variances(const RepresentationMatrix& reps) {
  std::vector<double> out(reps.dims());
  const double n = static_cast<double>(reps.rows());
  for (std::size_t i = 0; i < reps.dims(); ++i) {
    const auto col = reps.column(i);
    double mean = 0.0;
    for (double v : col) mean += v;
    mean /= n;
    double ss = 0.0;
    for (double v : col) ss += (v - mean) * (v - mean);
    out[i] = ss / n;
  }
  return out;
}

}  // namespace

std::vector<FactorVaeVote> factorvae_votes(const RepresentationMatrix& reps,
                                           const FactorTable& factors,
                                           const ProtocolParams& params, std::size_t first,
                                           std::size_t count) {
  check_pair(factors, reps);
  const std::vector<double> variances = global_variances(reps);
  const std::vector<std::size_t> active = active_dimensions(variances, params.prune_threshold);
  if (active.empty()) {
    throw Error(ErrorKind::AllDimensionsPruned,
                "no dimension has variance >= " + std::to_string(params.prune_threshold));
  }
  // Row-major copy of the active dimensions, scaled by the global std, so a
  // batch reads contiguous rows.
  const std::size_t width = active.size();
  const std::size_t n = reps.rows();
  std::vector<double> scaled(n * width);
  for (std::size_t a = 0; a < width; ++a) {
    const auto col = reps.column(active[a]);
    const double inv_std = 1.0 / std::sqrt(variances[active[a]]);
    for (std::size_t r = 0; r < n; ++r) scaled[r * width + a] = col[r] * inv_std;
  }

  const FixedFactorSampler sampler(factors);
  std::vector<FactorVaeVote> votes(count);
  parallel_for(count, [&](std::size_t p) {
    Xoshiro256 rng = derive_stream(params.seed, "factorvae", first + p);
    const auto [factor, rows] = sampler.draw_group(rng);
    std::vector<std::size_t> batch(params.batch_size);
    for (auto& r : batch) r = pick(rng, *rows);
    const double m = static_cast<double>(batch.size());
    std::vector<double> mean(width, 0.0);
    for (std::size_t r : batch) {
      const double* row = &scaled[r * width];
      for (std::size_t a = 0; a < width; ++a) mean[a] += row[a];
    }
    for (auto& v : mean) v /= m;
    std::vector<double> ss(width, 0.0);
    for (std::size_t r : batch) {
      const double* row = &scaled[r * width];
      for (std::size_t a = 0; a < width; ++a) {
        const double z = row[a] - mean[a];
        ss[a] += z * z;
      }
    }
    std::size_t best = 0;
    double best_var = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < width; ++a) {
      const double var = ss[a] / m;
      if (var < best_var) {
        best_var = var;
        best = active[a];
      }
    }
    votes[p] = FactorVaeVote{best, static_cast<std::int32_t>(factor)};
  });
  return votes;
}

double factorvae_score(const RepresentationMatrix& reps, const FactorTable& factors,
                       const ProtocolParams& params) {
  const auto train = factorvae_votes(reps, factors, params, 0, params.num_train);
  const auto eval = factorvae_votes(reps, factors, params, params.num_train, params.num_eval);
  const std::size_t d = reps.dims();
  const std::size_t k = factors.num_factors();
  std::vector<std::size_t> table(d * k, 0);
  for (const auto& v : train) ++table[v.dimension * k + static_cast<std::size_t>(v.factor)];
  std::vector<std::int32_t> classifier(d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < k; ++j) {
      if (table[i * k + j] > table[i * k + best]) best = j;
    }
    classifier[i] = static_cast<std::int32_t>(best);
  }
  if (eval.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& v : eval) hits += classifier[v.dimension] == v.factor;
  return static_cast<double>(hits) / static_cast<double>(eval.size());
}

double downstream_logistic(const RepresentationMatrix& reps, const FactorTable& factors,
                           const ProtocolParams& params) {
  check_pair(factors, reps);
  const std::size_t n = reps.rows();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Xoshiro256 rng = derive_stream(params.seed, "downstream", 0);
  for (std::size_t i = n; i > 1; --i) {
    std::swap(order[i - 1], order[static_cast<std::size_t>(rng.below(i))]);
  }
  const std::size_t train_size = (n * 4) / 5;
  if (train_size == 0 || train_size == n) {
    throw Error(ErrorKind::DegenerateFactor, "too few rows for an 80/20 split");
  }
  const std::span<const std::size_t> train_rows(order.data(), train_size);
  const std::span<const std::size_t> eval_rows(order.data() + train_size, n - train_size);
  require_distinct_values(factors, train_rows, "training");

  const RepresentationMatrix x_train = reps.select_rows(train_rows);
  const RepresentationMatrix x_eval = reps.select_rows(eval_rows);
  const std::size_t k = factors.num_factors();
  std::vector<double> accuracy(k);
  parallel_for(k, [&](std::size_t j) {
    std::vector<std::int32_t> y_train(train_rows.size()), y_eval(eval_rows.size());
    for (std::size_t r = 0; r < train_rows.size(); ++r) y_train[r] = factors(train_rows[r], j);
    for (std::size_t r = 0; r < eval_rows.size(); ++r) y_eval[r] = factors(eval_rows[r], j);
    LogisticRegression model(params.logistic);
    model.fit(x_train.values(), y_train, factors.cardinality(j));
    accuracy[j] = model.accuracy(x_eval.values(), y_eval);
  });
  return std::accumulate(accuracy.begin(), accuracy.end(), 0.0) / static_cast<double>(k);
}

}  // namespace dismet
