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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dismet/core.hpp"

namespace dismet {

struct DatasetSpec {
  std::string name;
  std::vector<std::string> factor_names;
  std::vector<std::int32_t> cardinalities;
};

// Built-in factor layouts of the benchmark datasets: dsprites, shapes3d,
// cars3d, smallnorb, celeba. Lookup is case-insensitive; throws
// IndexOutOfRange for unknown names.
DatasetSpec builtin_dataset(const std::string& name);
std::vector<DatasetSpec> builtin_datasets();

// Factor CSV: a header of `name:cardinality` cells, then one integer row per
// sample. Errors carry the 1-based line number.
FactorTable parse_factors(std::istream& in);
FactorTable read_factors(const std::filesystem::path& path);
void write_factors(const FactorTable& factors, std::ostream& out);
void write_factors(const FactorTable& factors, const std::filesystem::path& path);

// DREP: "DREP", u32 version (1), u64 N, u64 D, then N*D IEEE-754 doubles in
// row-major order; all little-endian.
inline constexpr std::uint32_t kDrepVersion = 1;
std::vector<std::uint8_t> encode_reps(const RepresentationMatrix& reps);
RepresentationMatrix decode_reps(const std::vector<std::uint8_t>& bytes);
RepresentationMatrix read_reps(const std::filesystem::path& path);
void write_reps(const RepresentationMatrix& reps, const std::filesystem::path& path);

// "mean (std)" of the scores in percent with one decimal.
std::string display_string(const MetricReport& report);

std::string reports_to_json(const std::vector<MetricReport>& reports);
std::vector<MetricReport> reports_from_json(const std::string& text);
void write_report(const std::vector<MetricReport>& reports, const std::filesystem::path& path);
std::vector<MetricReport> read_report(const std::filesystem::path& path);

// Shortest decimal string that round-trips to the same double.
std::string format_double(double value);

// CSV with a `factor` column of row labels followed by numbered columns.
std::string labeled_matrix_csv(const Eigen::MatrixXd& values,
                               const std::vector<std::string>& row_labels,
                               const std::vector<std::string>& column_labels);

void write_text(const std::string& text, const std::filesystem::path& path);

}  // namespace dismet
