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
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "dismet/classifiers.hpp"
#include "dismet/core.hpp"
#include "dismet/mi.hpp"

namespace dismet {

// Sampling protocol shared by the classifier-based scores.
struct ProtocolParams {
  std::size_t batch_size = 64;
  std::size_t num_train = 10000;
  std::size_t num_eval = 5000;
  double prune_threshold = 0.06;  // prune_dims.threshold
  std::uint64_t seed = 0;
  LogisticConfig logistic{};
};

// Mutual information gap: mean over factors with positive entropy of the gap
// between the two most informative dimensions, normalized by H(v_k).
double mig(const RepresentationMatrix& reps, const FactorTable& factors, int bins = kDefaultBins);
double mig_from_mi(const MIMatrix& mi);

// D x K matrix of held-out balanced accuracies of single-dimension decision
// stumps (one-vs-rest averaged over classes).
Eigen::MatrixXd sap_score_matrix(const RepresentationMatrix& reps, const FactorTable& factors,
                                 const ProtocolParams& params);
// Mean over factors of (best - second best) in each column of the score matrix.
double sap(const RepresentationMatrix& reps, const FactorTable& factors,
           const ProtocolParams& params);
double sap_from_scores(const Eigen::MatrixXd& scores);

struct LassoEstimator {
  double lambda = 0.01;
  int max_iterations = 1000;
};

// Importance supplied directly, e.g. |d c_i / d v_j| of a known encoder.
struct AnalyticEstimator {
  Eigen::MatrixXd importance;  // D x K
};

using DCIImportanceEstimator = std::variant<LassoEstimator, AnalyticEstimator>;

// D x K importance: for lasso, the mean |coefficient| of per-class
// one-vs-rest regressions on standardized codes. Throws EstimatorFailure when
// coordinate descent does not converge within the iteration budget.
Eigen::MatrixXd dci_importance(const RepresentationMatrix& reps, const FactorTable& factors,
                               const DCIImportanceEstimator& estimator);

// Entropy-weighted disentanglement over an estimator-based importance matrix.
double dci_disentanglement(const RepresentationMatrix& reps, const FactorTable& factors,
                           const DCIImportanceEstimator& estimator,
                           EntropyBase base = EntropyBase::natural);
double dci_from_importance(const Eigen::MatrixXd& importance, double log_divisor);

struct VoteFeatures {
  Eigen::MatrixXd features;           // one row per point
  std::vector<std::int32_t> labels;   // fixed factor of each point
};

// Mean |z1 - z2| over a batch of pairs sharing one fixed factor value, for
// points [first, first + count).
VoteFeatures betavae_features(const RepresentationMatrix& reps, const FactorTable& factors,
                              const ProtocolParams& params, std::size_t first, std::size_t count);

// Eval accuracy of a linear classifier predicting the fixed factor.
double betavae_score(const RepresentationMatrix& reps, const FactorTable& factors,
                     const ProtocolParams& params);

// Dimensions kept by FactorVAE: variance >= threshold.
std::vector<std::size_t> active_dimensions(const std::vector<double>& variances,
                                           double threshold);

struct FactorVaeVote {
  std::size_t dimension = 0;
  std::int32_t factor = 0;
};

std::vector<FactorVaeVote> factorvae_votes(const RepresentationMatrix& reps,
                                           const FactorTable& factors,
                                           const ProtocolParams& params, std::size_t first,
                                           std::size_t count);

// Majority-vote accuracy of (argmin normalized variance dim -> fixed factor).
double factorvae_score(const RepresentationMatrix& reps, const FactorTable& factors,
                       const ProtocolParams& params);

// Mean held-out accuracy of per-factor logistic regressions on the full
// codes, with an 80/20 split drawn from the seed.
double downstream_logistic(const RepresentationMatrix& reps, const FactorTable& factors,
                           const ProtocolParams& params);

}  // namespace dismet
