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

#include "dismet/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "dismet/baselines.hpp"
#include "dismet/io.hpp"
#include "dismet/med.hpp"
#include "dismet/parallel.hpp"
#include "dismet/random.hpp"

namespace dismet {

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::duplicated: return "duplicated";
    case ScenarioKind::copy_average: return "copy-average";
    case ScenarioKind::weighted_mix: return "weighted-mix";
  }
  return "unknown";
}

ScenarioKind parse_scenario_kind(const std::string& text) {
  for (auto kind : {ScenarioKind::duplicated, ScenarioKind::copy_average,
                    ScenarioKind::weighted_mix}) {
    if (text == to_string(kind)) return kind;
  }
  throw Error(ErrorKind::ParseError, "unknown scenario kind '" + text +
                                         "' (duplicated, copy-average, weighted-mix)");
}

void validate(const ScenarioSpec& spec) {
  const std::size_t min_dims = spec.kind == ScenarioKind::copy_average ? 3 : 2;
  if (spec.dims < min_dims) {
    throw Error(ErrorKind::ShapeMismatch, to_string(spec.kind) + " needs D >= " +
                                              std::to_string(min_dims));
  }
  if (spec.replication == 0) throw Error(ErrorKind::ShapeMismatch, "replication must be >= 1");
}

namespace {

double code(ScenarioKind kind, std::size_t i, double v0, double v1) {
  switch (kind) {
    case ScenarioKind::duplicated:
      return i % 2 == 0 ? v0 : v1;
    case ScenarioKind::copy_average:
      if (i == 0) return v0;
      if (i == 1) return v1;
      return 0.5 * (v0 + v1);
    case ScenarioKind::weighted_mix:
      if (i == 0) return v0 / 3.0 + 2.0 * v1 / 3.0;
      if (i == 1) return v1 / 3.0 + 2.0 * v0 / 3.0;
      return 0.5 * (v0 + v1);
  }
  return 0.0;
}

}  // namespace

Dataset generate(const ScenarioSpec& spec) {
  validate(spec);
  const std::size_t n = 4 * spec.replication;
  std::vector<std::int32_t> values(2 * n);
  Eigen::MatrixXd reps(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(spec.dims));
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t combo = r / spec.replication;
    const auto v0 = static_cast<std::int32_t>(combo / 2);
    const auto v1 = static_cast<std::int32_t>(combo % 2);
    values[r] = v0;
    values[n + r] = v1;
    for (std::size_t i = 0; i < spec.dims; ++i) {
      reps(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) = code(spec.kind, i, v0, v1);
    }
  }
  return validate_pair(FactorTable(n, std::move(values), {"F0", "F1"}, {2, 2}),
                       RepresentationMatrix(std::move(reps)));
}

Eigen::MatrixXd analytic_derivative(const ScenarioSpec& spec) {
  validate(spec);
  Eigen::MatrixXd out(static_cast<Eigen::Index>(spec.dims), 2);
  for (std::size_t i = 0; i < spec.dims; ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    // The codes are linear, so finite differences of unit steps are exact.
    const double base = code(spec.kind, i, 0.0, 0.0);
    out(row, 0) = std::abs(code(spec.kind, i, 1.0, 0.0) - base);
    out(row, 1) = std::abs(code(spec.kind, i, 0.0, 1.0) - base);
  }
  return out;
}

double analytic_med(const ScenarioSpec& spec, EntropyBase base) {
  if (base != EntropyBase::natural) {
    throw Error(ErrorKind::UnsupportedBase, "closed forms are stated for the natural log");
  }
  validate(spec);
  const double d = static_cast<double>(spec.dims);
  switch (spec.kind) {
    case ScenarioKind::duplicated: return 1.0;
    case ScenarioKind::copy_average: return 1.0 - (d - 2.0) / d * std::numbers::ln2;
    case ScenarioKind::weighted_mix: return 1.0 - std::numbers::ln2;
  }
  return 0.0;
}

Eigen::MatrixXd simplified_dci_importance(std::size_t dims, std::size_t d0, std::size_t d1) {
  if (dims < 3 || d0 < 2 || d1 < 2 || d0 >= dims || d1 >= dims) {
    throw Error(ErrorKind::IndexOutOfRange, "need D >= 3 and d0, d1 in [2, D-1]");
  }
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dims), 2);
  r(0, 0) = 1.0;
  r(1, 1) = 1.0;
  r(static_cast<Eigen::Index>(d0), 0) = 0.5;
  r(static_cast<Eigen::Index>(d1), 1) = 0.5;
  return r;
}

namespace {

// Same value as dci_from_importance(simplified_dci_importance(...)): rows of
// zero importance add exact zeros to every sum, so they are dropped.
double compact_case(std::size_t d0, std::size_t d1, double log_divisor) {
  Eigen::MatrixXd r;
  if (d0 == d1) {
    r.resize(3, 2);
    r << 1.0, 0.0, 0.0, 1.0, 0.5, 0.5;
  } else {
    r.resize(4, 2);
    r << 1.0, 0.0, 0.0, 1.0, 0.5, 0.0, 0.0, 0.5;
    if (d1 < d0) r.row(2).swap(r.row(3));
  }
  return dci_from_importance(r, log_divisor);
}

SimplifiedDciSummary summarize(const std::map<double, std::size_t>& counts) {
  SimplifiedDciSummary out;
  double sum = 0.0;
  for (const auto& [value, count] : counts) {
    out.cases.emplace_back(value, count);
    out.draws += count;
    sum += value * static_cast<double>(count);
  }
  if (out.draws == 0) return out;
  out.mean = sum / static_cast<double>(out.draws);
  double ss = 0.0;
  for (const auto& [value, count] : counts) {
    ss += (value - out.mean) * (value - out.mean) * static_cast<double>(count);
  }
  out.std = std::sqrt(ss / static_cast<double>(out.draws));
  return out;
}

}  // namespace

double simplified_dci_case(std::size_t dims, std::size_t d0, std::size_t d1, EntropyBase base) {
  return dci_from_importance(simplified_dci_importance(dims, d0, d1), log_base_divisor(base, 2));
}

SimplifiedDciSummary simplified_dci(std::size_t dims, SimplifiedDciMode mode, EntropyBase base) {
  if (dims < 3) throw Error(ErrorKind::ShapeMismatch, "simplified DCI needs D >= 3");
  const double divisor = log_base_divisor(base, 2);
  std::map<double, std::size_t> counts;
  if (std::holds_alternative<Enumerate>(mode)) {
    for (std::size_t d0 = 2; d0 < dims; ++d0) {
      for (std::size_t d1 = 2; d1 < dims; ++d1) ++counts[compact_case(d0, d1, divisor)];
    }
  } else {
    const auto& sample = std::get<Sample>(mode);
    for (std::size_t t = 0; t < sample.trials; ++t) {
      Xoshiro256 rng = derive_stream(sample.seed, "simplified_dci", t);
      const std::size_t d0 = 2 + static_cast<std::size_t>(rng.below(dims - 2));
      const std::size_t d1 = 2 + static_cast<std::size_t>(rng.below(dims - 2));
      ++counts[compact_case(d0, d1, divisor)];
    }
  }
  return summarize(counts);
}

double stated_dci_expectation(std::size_t dims) {
  if (dims < 3) throw Error(ErrorKind::ShapeMismatch, "simplified DCI needs D >= 3");
  return 1.0 - std::numbers::ln2 / static_cast<double>(dims - 2);
}

std::vector<SweepRow> sweep(ScenarioKind kind, const std::vector<std::size_t>& dims,
                            const std::vector<std::string>& metrics, int bins,
                            EntropyBase base) {
  static const std::vector<std::string> known = {"med", "med_analytic", "topk_med",
                                                 "mig", "dci_enumerated", "dci_stated"};
  for (const auto& m : metrics) {
    if (std::find(known.begin(), known.end(), m) == known.end()) {
      throw Error(ErrorKind::ParseError, "unknown sweep metric '" + m + "'");
    }
    if (m.starts_with("dci") && kind != ScenarioKind::copy_average) {
      throw Error(ErrorKind::ShapeMismatch, "simplified DCI is defined for copy-average only");
    }
  }
  for (std::size_t d : dims) validate(ScenarioSpec{kind, d, 1});

  std::vector<std::vector<SweepRow>> per_point(dims.size());
  parallel_for(dims.size(), [&](std::size_t p) {
    const ScenarioSpec spec{kind, dims[p], 1};
    const Dataset data = generate(spec);
    for (const auto& m : metrics) {
      double value = 0.0;
      if (m == "med") {
        value = med_score(data.reps, data.factors, bins, base);
      } else if (m == "med_analytic") {
        value = analytic_med(spec, base);
      } else if (m == "topk_med") {
        value = topk_med(data.reps, data.factors, 1, bins, base);
      } else if (m == "mig") {
        value = mig(data.reps, data.factors, bins);
      } else if (m == "dci_enumerated") {
        value = simplified_dci(spec.dims, Enumerate{}, base).mean;
      } else {
        value = stated_dci_expectation(spec.dims);
      }
      per_point[p].push_back(SweepRow{kind, spec.dims, m, value});
    }
  });
  std::vector<SweepRow> rows;
  for (auto& point : per_point) rows.insert(rows.end(), point.begin(), point.end());
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "kind,D,metric,value\n";
  for (const auto& r : rows) {
    out += to_string(r.kind) + "," + std::to_string(r.dims) + "," + r.metric + "," +
           format_double(r.value) + "\n";
  }
  return out;
}

}  // namespace dismet
