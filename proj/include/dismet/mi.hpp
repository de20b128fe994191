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

#include "dismet/core.hpp"

namespace dismet {

inline constexpr int kDefaultBins = 20;

// Logarithm base of every entropy-derived score in a run. `natural` reproduces
// the closed forms of the linear two-factor scenarios; `factor_count` uses
// log base K as in the DCI convention.
enum class EntropyBase { natural, factor_count };

// ln(base) for the given factor count; 1 for the natural base. A single-factor
// run has no meaningful base-K and falls back to 1 (entropies over one outcome
// are zero anyway).
double log_base_divisor(EntropyBase base, std::size_t num_factors);

// Equal-width histogram over [min, max]. x maps to floor(bins * (x - min) /
// (max - min)) clamped to bins - 1; a constant column maps to bin 0.
std::vector<std::int32_t> discretize(std::span<const double> column, int bins = kDefaultBins);

// Empirical entropy -sum p log p, divided by `log_divisor` (1 for nats).
double discrete_entropy(std::span<const std::int32_t> labels, double log_divisor = 1.0);

// Entropy of a histogram given by its counts. Counts are summed in sorted
// order, so any relabeling of the bins gives a bit-identical result.
double entropy_of_counts(std::vector<std::int64_t> counts, double log_divisor = 1.0);

// I(x; y) = sum p(x,y) log(p(x,y) / (p(x) p(y))) on the empirical joint
// table, clamped at 0. Exactly 0 for empirically independent labels and
// exactly symmetric.
// Throws LengthMismatch.
double mutual_information(std::span<const std::int32_t> x, std::span<const std::int32_t> y,
                          double log_divisor = 1.0);

struct MIMatrix {
  Eigen::MatrixXd values;                  // D x K, nats
  std::vector<double> code_entropies;      // H(discretized c_i), nats
  std::vector<double> factor_entropies;    // H(v_j), nats
  EntropyBase base = EntropyBase::natural;

  std::size_t dims() const { return static_cast<std::size_t>(values.rows()); }
  std::size_t num_factors() const { return static_cast<std::size_t>(values.cols()); }
};

// Entry (i, j) = I(discretize(c_i, bins), v_j). Cells are computed
// independently in parallel; the result does not depend on the worker count.
MIMatrix mi_matrix(const RepresentationMatrix& reps, const FactorTable& factors,
                   int bins = kDefaultBins, EntropyBase base = EntropyBase::natural);

}  // namespace dismet
