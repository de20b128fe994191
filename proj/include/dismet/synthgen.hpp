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
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "dismet/core.hpp"
#include "dismet/io.hpp"

namespace dismet {

inline constexpr std::size_t kMaxGridRows = 10'000'000;

struct FullGrid {};
struct SampledGrid {
  std::size_t rows = 0;
  std::uint64_t seed = 0;
};
using GridMode = std::variant<FullGrid, SampledGrid>;

// Full Cartesian product in row-major factor order (last factor fastest), or
// independent uniform samples of every factor. Throws GridTooLarge when the
// full product exceeds kMaxGridRows.
FactorTable factor_grid(const DatasetSpec& spec, GridMode mode = FullGrid{});

namespace encoder {

struct Identity {};
struct Duplicate {
  std::size_t copies = 2;
};
// D x K mixing matrix; codes are factors * matrix^T.
struct LinearMix {
  Eigen::MatrixXd matrix;
};
enum class Nonlinearity { none, tanh };
// One-hot expanded factors times a seeded standard-normal matrix.
struct RandomProjection {
  std::size_t dims = 0;
  std::uint64_t seed = 0;
  Nonlinearity nonlinearity = Nonlinearity::none;
};
struct AppendNoise {
  std::size_t count = 0;
  std::uint64_t seed = 0;
};
struct AppendConstant {
  std::size_t count = 0;
  double value = 0.0;
};

}  // namespace encoder

using EncoderSpec = std::variant<encoder::Identity, encoder::Duplicate, encoder::LinearMix,
                                 encoder::RandomProjection, encoder::AppendNoise,
                                 encoder::AppendConstant>;

// Codes produced by one encoder stage. Throws ShapeMismatch for inconsistent
// specs.
RepresentationMatrix encode(const FactorTable& factors, const EncoderSpec& spec);

// Horizontal concatenation of every stage's codes, in order; e.g.
// {Identity, AppendConstant{3}} gives the identity code plus three constant
// columns.
RepresentationMatrix encode(const FactorTable& factors, std::span<const EncoderSpec> stages);

// Parses "identity", "duplicate:M", "random-projection:D[:SEED[:tanh]]",
// "noise:COUNT[:SEED]", "constant:COUNT[:VALUE]" and
// "linear-mix:a,b;c,d" (rows separated by ';').
EncoderSpec parse_encoder(const std::string& text);

}  // namespace dismet
