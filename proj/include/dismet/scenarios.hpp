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
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "dismet/core.hpp"
#include "dismet/mi.hpp"

namespace dismet {

// Linear codes over two independent uniform binary factors v0, v1:
//   duplicated:   c_i = v_{i mod 2}
//   copy_average: c_0 = v0, c_1 = v1, c_i = (v0 + v1) / 2 for i >= 2
//   weighted_mix: c_0 = v0/3 + 2 v1/3, c_1 = v1/3 + 2 v0/3, c_i = (v0 + v1) / 2
enum class ScenarioKind { duplicated, copy_average, weighted_mix };

std::string to_string(ScenarioKind kind);
ScenarioKind parse_scenario_kind(const std::string& text);

struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::duplicated;
  std::size_t dims = 2;
  std::size_t replication = 1;  // copies of each factor combination
};

// Throws ShapeMismatch unless dims >= 2 (>= 3 for copy_average) and
// replication >= 1.
void validate(const ScenarioSpec& spec);

// All four factor combinations, each `replication` times, with exact codes.
Dataset generate(const ScenarioSpec& spec);

// |d c_i / d v_j| of the scenario's linear code (D x 2).
Eigen::MatrixXd analytic_derivative(const ScenarioSpec& spec);

// Closed-form MED under the natural log. Throws UnsupportedBase otherwise.
double analytic_med(const ScenarioSpec& spec, EntropyBase base = EntropyBase::natural);

// Copy-average importance under the sparsity-2 assumption: factor j keeps its
// pure dimension (importance 1) and one averaged dimension d_j (importance
// 1/2); every other entry is 0.
Eigen::MatrixXd simplified_dci_importance(std::size_t dims, std::size_t d0, std::size_t d1);

// DCI score of one (d0, d1) draw.
double simplified_dci_case(std::size_t dims, std::size_t d0, std::size_t d1,
                           EntropyBase base = EntropyBase::natural);

struct Enumerate {};
struct Sample {
  std::uint64_t seed = 0;
  std::size_t trials = 10000;
};
using SimplifiedDciMode = std::variant<Enumerate, Sample>;

struct SimplifiedDciSummary {
  double mean = 0.0;
  double std = 0.0;  // population std over draws
  std::size_t draws = 0;
  // Distinct per-draw values and how many draws produced each.
  std::vector<std::pair<double, std::size_t>> cases;
};

// d0, d1 independent and uniform on [2, D-1]. Enumerate averages over all
// (D-2)^2 pairs exactly.
SimplifiedDciSummary simplified_dci(std::size_t dims, SimplifiedDciMode mode = Enumerate{},
                                    EntropyBase base = EntropyBase::natural);

// Closed form 1 - log 2 / (D - 2). It takes the d0 == d1 case as 1 - log 2
// instead of its sum of rho_i S_i (1 - log 2 / 3), so it runs below the
// enumerated mean.
double stated_dci_expectation(std::size_t dims);

struct SweepRow {
  ScenarioKind kind;
  std::size_t dims;
  std::string metric;
  double value;
};

// Metrics: "med" (generated data), "med_analytic", "topk_med" (k = 1),
// "mig", "dci_enumerated", "dci_stated". The DCI rows are defined for
// copy_average only. Rows are ordered by D, then metric.
std::vector<SweepRow> sweep(ScenarioKind kind, const std::vector<std::size_t>& dims,
                            const std::vector<std::string>& metrics, int bins = kDefaultBins,
                            EntropyBase base = EntropyBase::natural);

std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace dismet
