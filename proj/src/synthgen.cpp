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

#include "dismet/synthgen.hpp"

#include <cmath>
#include <sstream>

#include "dismet/parallel.hpp"
#include "dismet/random.hpp"

namespace dismet {

FactorTable factor_grid(const DatasetSpec& spec, GridMode mode) {
  const std::size_t k = spec.cardinalities.size();
  std::size_t rows = 0;
  std::vector<std::int32_t> values;
  if (std::holds_alternative<FullGrid>(mode)) {
    rows = 1;
    for (auto c : spec.cardinalities) {
      if (c <= 0) throw Error(ErrorKind::FactorOutOfRange, "nonpositive cardinality");
      rows *= static_cast<std::size_t>(c);
      if (rows > kMaxGridRows) {
        throw Error(ErrorKind::GridTooLarge, "'" + spec.name + "' has more than " +
                                                 std::to_string(kMaxGridRows) + " combinations");
      }
    }
    values.resize(rows * k);
    // Stride of factor j is the product of the cardinalities after it.
    std::size_t stride = rows;
    for (std::size_t j = 0; j < k; ++j) {
      const auto card = static_cast<std::size_t>(spec.cardinalities[j]);
      stride /= card;
      for (std::size_t n = 0; n < rows; ++n) {
        values[j * rows + n] = static_cast<std::int32_t>((n / stride) % card);
      }
    }
  } else {
    const auto& sampled = std::get<SampledGrid>(mode);
    rows = sampled.rows;
    values.resize(rows * k);
    Xoshiro256 rng = derive_stream(sampled.seed, "factor_grid", 0);
    for (std::size_t n = 0; n < rows; ++n) {
      for (std::size_t j = 0; j < k; ++j) {
        values[j * rows + n] = static_cast<std::int32_t>(
            rng.below(static_cast<std::uint64_t>(spec.cardinalities[j])));
      }
    }
  }
  return FactorTable(rows, std::move(values), spec.factor_names, spec.cardinalities);
}

namespace {

Eigen::MatrixXd factor_values(const FactorTable& factors) {
  Eigen::MatrixXd v(static_cast<Eigen::Index>(factors.rows()),
                    static_cast<Eigen::Index>(factors.num_factors()));
  for (std::size_t j = 0; j < factors.num_factors(); ++j) {
    const auto col = factors.column(j);
    for (std::size_t n = 0; n < col.size(); ++n) {
      v(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(j)) = col[n];
    }
  }
  return v;
}

struct StageEncoder {
  const FactorTable& factors;

  Eigen::MatrixXd operator()(const encoder::Identity&) const { return factor_values(factors); }

  Eigen::MatrixXd operator()(const encoder::Duplicate& spec) const {
    if (spec.copies == 0) throw Error(ErrorKind::ShapeMismatch, "duplicate needs m >= 1");
    const Eigen::MatrixXd base = factor_values(factors);
    Eigen::MatrixXd out(base.rows(), base.cols() * static_cast<Eigen::Index>(spec.copies));
    for (std::size_t m = 0; m < spec.copies; ++m) {
      out.middleCols(static_cast<Eigen::Index>(m) * base.cols(), base.cols()) = base;
    }
    return out;
  }

  Eigen::MatrixXd operator()(const encoder::LinearMix& spec) const {
    if (spec.matrix.rows() == 0 ||
        spec.matrix.cols() != static_cast<Eigen::Index>(factors.num_factors())) {
      throw Error(ErrorKind::ShapeMismatch,
                  "linear-mix matrix must be D x " + std::to_string(factors.num_factors()));
    }
    return factor_values(factors) * spec.matrix.transpose();
  }

  Eigen::MatrixXd operator()(const encoder::RandomProjection& spec) const {
    if (spec.dims == 0) throw Error(ErrorKind::ShapeMismatch, "random projection needs D >= 1");
    std::vector<std::size_t> offsets(factors.num_factors());
    std::size_t width = 0;
    for (std::size_t j = 0; j < factors.num_factors(); ++j) {
      offsets[j] = width;
      width += static_cast<std::size_t>(factors.cardinality(j));
    }
    // Row w of the projection is the code contributed by one-hot entry w,
    // filled row by row from a single stream.
    Eigen::MatrixXd weights(static_cast<Eigen::Index>(width), static_cast<Eigen::Index>(spec.dims));
    Xoshiro256 rng = derive_stream(spec.seed, "random_projection", 0);
    for (Eigen::Index w = 0; w < weights.rows(); ++w) {
      for (Eigen::Index d = 0; d < weights.cols(); ++d) weights(w, d) = rng.normal();
    }
    Eigen::MatrixXd out(static_cast<Eigen::Index>(factors.rows()), weights.cols());
    parallel_for(factors.rows(), [&](std::size_t n) {
      Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(weights.cols());
      for (std::size_t j = 0; j < factors.num_factors(); ++j) {
        row += weights.row(static_cast<Eigen::Index>(offsets[j] + static_cast<std::size_t>(factors(n, j))));
      }
      if (spec.nonlinearity == encoder::Nonlinearity::tanh) row = row.array().tanh();
      out.row(static_cast<Eigen::Index>(n)) = row;
    });
    return out;
  }

  Eigen::MatrixXd operator()(const encoder::AppendNoise& spec) const {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(factors.rows()),
                        static_cast<Eigen::Index>(spec.count));
    Xoshiro256 rng = derive_stream(spec.seed, "append_noise", 0);
    for (Eigen::Index n = 0; n < out.rows(); ++n) {
      for (Eigen::Index c = 0; c < out.cols(); ++c) out(n, c) = rng.normal();
    }
    return out;
  }

  Eigen::MatrixXd operator()(const encoder::AppendConstant& spec) const {
    return Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(factors.rows()),
                                     static_cast<Eigen::Index>(spec.count), spec.value);
  }
};

}  // namespace

RepresentationMatrix encode(const FactorTable& factors, const EncoderSpec& spec) {
  return RepresentationMatrix(std::visit(StageEncoder{factors}, spec));
}

RepresentationMatrix encode(const FactorTable& factors, std::span<const EncoderSpec> stages) {
  std::vector<Eigen::MatrixXd> blocks;
  Eigen::Index width = 0;
  for (const auto& stage : stages) {
    blocks.push_back(std::visit(StageEncoder{factors}, stage));
    width += blocks.back().cols();
  }
  if (width == 0) throw Error(ErrorKind::ShapeMismatch, "encoder produced no columns");
  Eigen::MatrixXd out(static_cast<Eigen::Index>(factors.rows()), width);
  Eigen::Index at = 0;
  for (const auto& block : blocks) {
    out.middleCols(at, block.cols()) = block;
    at += block.cols();
  }
  return RepresentationMatrix(std::move(out));
}

namespace {

std::vector<std::string> split_on(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(part);
  return parts;
}

[[noreturn]] void bad_encoder(const std::string& text) {
  throw Error(ErrorKind::ParseError, "cannot parse encoder '" + text + "'");
}

std::uint64_t to_u64(const std::string& s, const std::string& text) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used);
    if (used != s.size()) bad_encoder(text);
    return v;
  } catch (const std::logic_error&) {
    bad_encoder(text);
  }
}

double to_double(const std::string& s, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) bad_encoder(text);
    return v;
  } catch (const std::logic_error&) {
    bad_encoder(text);
  }
}

}  // namespace

EncoderSpec parse_encoder(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  const auto args = split_on(rest, ':');

  if (kind == "identity" && args.empty()) return encoder::Identity{};
  if (kind == "duplicate" && args.size() == 1) {
    return encoder::Duplicate{static_cast<std::size_t>(to_u64(args[0], text))};
  }
  if (kind == "random-projection" && !args.empty() && args.size() <= 3) {
    encoder::RandomProjection spec;
    spec.dims = static_cast<std::size_t>(to_u64(args[0], text));
    if (args.size() > 1) spec.seed = to_u64(args[1], text);
    if (args.size() > 2) {
      if (args[2] == "tanh") {
        spec.nonlinearity = encoder::Nonlinearity::tanh;
      } else if (args[2] != "none") {
        bad_encoder(text);
      }
    }
    return spec;
  }
  if (kind == "noise" && !args.empty() && args.size() <= 2) {
    encoder::AppendNoise spec;
    spec.count = static_cast<std::size_t>(to_u64(args[0], text));
    if (args.size() > 1) spec.seed = to_u64(args[1], text);
    return spec;
  }
  if (kind == "constant" && !args.empty() && args.size() <= 2) {
    encoder::AppendConstant spec;
    spec.count = static_cast<std::size_t>(to_u64(args[0], text));
    if (args.size() > 1) spec.value = to_double(args[1], text);
    return spec;
  }
  if (kind == "linear-mix" && args.size() == 1) {
    std::vector<std::vector<double>> rows;
    for (const auto& row : split_on(args[0], ';')) {
      std::vector<double> values;
      for (const auto& cell : split_on(row, ',')) values.push_back(to_double(cell, text));
      if (values.empty() || (!rows.empty() && values.size() != rows.front().size())) {
        bad_encoder(text);
      }
      rows.push_back(std::move(values));
    }
    if (rows.empty()) bad_encoder(text);
    encoder::LinearMix spec;
    spec.matrix.resize(static_cast<Eigen::Index>(rows.size()),
                       static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t c = 0; c < rows[r].size(); ++c) {
        spec.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
      }
    }
    return spec;
  }
  bad_encoder(text);
}

}  // namespace dismet
