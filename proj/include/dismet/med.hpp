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
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "dismet/core.hpp"
#include "dismet/mi.hpp"

namespace dismet {

// Column-normalized relevance of each latent dimension to each factor, with
// the per-dimension distributions and scores derived from it.
struct ImportanceMatrix {
  Eigen::MatrixXd relevance;     // R, D x K; columns sum to 1 or are all zero
  Eigen::MatrixXd distribution;  // P, D x K; rows sum to 1 or are all zero
  Eigen::VectorXd scores;        // S_i = 1 - H(P_i.)
  Eigen::VectorXd weights;       // rho_i = sum_j R_ij / sum_ij R_ij
  Eigen::VectorXd mass;          // sum_j R_ij

  std::size_t dims() const { return static_cast<std::size_t>(relevance.rows()); }
  std::size_t num_factors() const { return static_cast<std::size_t>(relevance.cols()); }
};

// Builds an importance matrix from any nonnegative D x K relevance source.
// Columns are normalized to sum to 1; all-zero columns stay zero.
ImportanceMatrix importance_from_relevance(const Eigen::MatrixXd& raw, double log_divisor);

ImportanceMatrix importance_matrix(const MIMatrix& mi);

// S_i = 1 - H(P_i.) / log_divisor; rows with no mass score 0.
Eigen::VectorXd dimension_scores(const Eigen::MatrixXd& relevance, double log_divisor);

// sum_i rho_i S_i, evaluated as sum_i mass_i S_i / sum_i mass_i. 0 when the
// importance matrix carries no information.
double weighted_score(const ImportanceMatrix& importance);

// Raw MED value. With the natural base and K >= 3 this can fall below 0;
// clamp only for display.
double med_score(const RepresentationMatrix& reps, const FactorTable& factors,
                 int bins = kDefaultBins, EntropyBase base = EntropyBase::natural);

struct TopKSelection {
  std::size_t k = 0;
  std::vector<std::vector<std::size_t>> groups;  // G_j: dims whose argmax factor is j
  std::vector<std::vector<std::size_t>> picked_per_factor;
  std::vector<std::size_t> picked;  // sorted union
};

// Per factor, the k dims of G_j with the highest score (ties to the lower
// index). Argmax ties across factors go to the lower factor index; rows with
// no mass belong to no group.
TopKSelection topk_select(const Eigen::MatrixXd& relevance, const Eigen::VectorXd& scores,
                          std::size_t k);

struct TopKResult {
  TopKSelection selection;
  double score = 0.0;
};

// MED of the selected sub-vector, recomputed from scratch (the column
// normalization depends on which dimensions are present). Throws
// EmptySelection when nothing is selected.
TopKResult topk_evaluate(const RepresentationMatrix& reps, const FactorTable& factors,
                         std::size_t k, int bins = kDefaultBins,
                         EntropyBase base = EntropyBase::natural);

double topk_med(const RepresentationMatrix& reps, const FactorTable& factors, std::size_t k,
                int bins = kDefaultBins, EntropyBase base = EntropyBase::natural);

// Cosine similarity between factors' MI profiles over the given rows
// (|P| x K). Factors with a zero profile get a zero row and column.
Eigen::MatrixXd cooccurrence(const Eigen::MatrixXd& restricted_mi);

// K x D heatmap: R transposed, each factor row normalized to sum to 1.
Eigen::MatrixXd heatmap(const ImportanceMatrix& importance);

enum class ManipulationMode { average, single };

struct ManipulationOptions {
  ManipulationMode mode = ManipulationMode::average;
  // Which assignment of the other factors to use in single mode, in
  // row-major order of the remaining factors.
  std::size_t assignment = 0;
};

// Per-dimension variance of the codes while factor j sweeps all its values
// and every other factor is held fixed. Requires a complete, balanced
// Cartesian grid (NotAGrid otherwise).
std::vector<double> manipulation_variance(const RepresentationMatrix& reps,
                                          const FactorTable& factors, std::size_t factor,
                                          ManipulationOptions options = {});

struct PcaResult {
  RepresentationMatrix projected;  // N x target_dim
  Eigen::MatrixXd components;      // D x target_dim, unit columns
  Eigen::VectorXd variances;       // per component
  std::size_t rank = 0;
  bool rank_deficient = false;  // trailing components were padded with zeros
};

// Projection of the centered codes onto the leading eigenvectors of their
// covariance. Each component is signed so its largest-magnitude loading is
// positive.
PcaResult pca_reduce(const RepresentationMatrix& reps, std::size_t target_dim);

}  // namespace dismet
