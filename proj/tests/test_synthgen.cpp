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

#include "doctest.h"
#include "dismet/error.hpp"
#include "dismet/io.hpp"
#include "dismet/med.hpp"
#include "dismet/synthgen.hpp"
#include "oracles.hpp"

using dismet::DatasetSpec;
using dismet::EncoderSpec;

TEST_CASE("full grids enumerate the Cartesian product, last factor fastest") {
  const auto f = dismet::factor_grid(DatasetSpec{"g", {"a", "b"}, {2, 2}});
  REQUIRE(f.rows() == 4);
  const std::vector<std::vector<int>> expected = oracle::grid({2, 2});
  for (std::size_t n = 0; n < 4; ++n) {
    CHECK(f(n, 0) == expected[n][0]);
    CHECK(f(n, 1) == expected[n][1]);
  }
  CHECK(dismet::factor_grid(dismet::builtin_dataset("dsprites")).rows() == 737280);
}

TEST_CASE("sampled grids are deterministic per seed") {
  const auto spec = dismet::builtin_dataset("shapes3d");
  const auto a = dismet::factor_grid(spec, dismet::SampledGrid{10, 0});
  const auto b = dismet::factor_grid(spec, dismet::SampledGrid{10, 0});
  const auto c = dismet::factor_grid(spec, dismet::SampledGrid{10, 1});
  CHECK(a == b);
  CHECK_FALSE(a == c);
  CHECK(a.rows() == 10);
}

TEST_CASE("oversized full grids are refused") {
  try {
    dismet::factor_grid(DatasetSpec{"huge", {"a", "b", "c"}, {1000, 1000, 1000}});
    FAIL("expected GridTooLarge");
  } catch (const dismet::Error& e) {
    CHECK(e.kind() == dismet::ErrorKind::GridTooLarge);
  }
}

TEST_CASE("identity and duplicate encoders") {
  const auto f = dismet::factor_grid(DatasetSpec{"g", {"a", "b"}, {2, 2}});
  const auto id = dismet::encode(f, EncoderSpec{dismet::encoder::Identity{}});
  const auto dup = dismet::encode(f, EncoderSpec{dismet::encoder::Duplicate{2}});
  REQUIRE(dup.dims() == 4);
  for (std::size_t n = 0; n < 4; ++n) {
    CHECK(id(n, 0) == f(n, 0));
    CHECK(id(n, 1) == f(n, 1));
    for (std::size_t i = 0; i < 4; ++i) CHECK(dup(n, i) == f(n, i % 2));
  }
}

TEST_CASE("random projections are deterministic per seed") {
  const auto f = dismet::factor_grid(DatasetSpec{"g", {"a", "b"}, {3, 4}});
  const EncoderSpec spec = dismet::encoder::RandomProjection{1000, 5, dismet::encoder::Nonlinearity::none};
  const auto a = dismet::encode(f, spec);
  CHECK(a.rows() == 12);
  CHECK(a.dims() == 1000);
  CHECK(a == dismet::encode(f, spec));
  const auto other = dismet::encode(f, EncoderSpec{dismet::encoder::RandomProjection{1000, 6}});
  CHECK_FALSE(a == other);
  const auto squashed = dismet::encode(f, EncoderSpec{dismet::encoder::RandomProjection{
                                              1000, 5, dismet::encoder::Nonlinearity::tanh}});
  CHECK(squashed(3, 7) == doctest::Approx(std::tanh(a(3, 7))));
}

TEST_CASE("random projections with different seeds score alike") {
  const auto f = dismet::factor_grid(DatasetSpec{"g", {"a", "b", "c"}, {3, 4, 5}});
  std::vector<double> scores;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    scores.push_back(dismet::med_score(
        dismet::encode(f, EncoderSpec{dismet::encoder::RandomProjection{50, seed}}), f));
  }
  double mean = 0.0;
  for (double s : scores) mean += s / 5.0;
  double var = 0.0;
  for (double s : scores) var += (s - mean) * (s - mean) / 4.0;
  for (double s : scores) CHECK(std::abs(s - mean) <= 3.0 * std::sqrt(var) + 1e-12);
}

TEST_CASE("stages concatenate and constants do not change MED") {
  const auto f = dismet::factor_grid(DatasetSpec{"g", {"a", "b"}, {3, 4}});
  const std::vector<EncoderSpec> stages{dismet::encoder::Identity{},
                                        dismet::encoder::AppendConstant{3, 2.0},
                                        dismet::encoder::AppendNoise{2, 1}};
  const auto r = dismet::encode(f, stages);
  CHECK(r.dims() == 7);
  CHECK(r(5, 3) == 2.0);
  CHECK(dismet::med_score(dismet::encode(f, EncoderSpec{dismet::encoder::Identity{}}), f) == 1.0);
  const std::vector<EncoderSpec> padded{dismet::encoder::Identity{},
                                        dismet::encoder::AppendConstant{3, 2.0}};
  CHECK(dismet::med_score(dismet::encode(f, padded), f) == 1.0);
}

TEST_CASE("linear mixes multiply by the transposed matrix") {
  const auto f = dismet::factor_grid(DatasetSpec{"g", {"a", "b"}, {2, 3}});
  Eigen::MatrixXd mix(3, 2);
  mix << 1, 0, 0.3, 1, 2, -1;
  const auto r = dismet::encode(f, EncoderSpec{dismet::encoder::LinearMix{mix}});
  for (std::size_t n = 0; n < f.rows(); ++n) {
    CHECK(r(n, 1) == doctest::Approx(0.3 * f(n, 0) + f(n, 1)));
    CHECK(r(n, 2) == doctest::Approx(2.0 * f(n, 0) - f(n, 1)));
  }
  CHECK_THROWS_AS(dismet::encode(f, EncoderSpec{dismet::encoder::LinearMix{Eigen::MatrixXd::Ones(2, 3)}}),
                  dismet::Error);
}

TEST_CASE("encoder strings parse") {
  CHECK(std::holds_alternative<dismet::encoder::Identity>(dismet::parse_encoder("identity")));
  CHECK(std::get<dismet::encoder::Duplicate>(dismet::parse_encoder("duplicate:3")).copies == 3);
  const auto rp = std::get<dismet::encoder::RandomProjection>(dismet::parse_encoder("random-projection:100:4:tanh"));
  CHECK(rp.dims == 100);
  CHECK(rp.seed == 4);
  CHECK(rp.nonlinearity == dismet::encoder::Nonlinearity::tanh);
  const auto lm = std::get<dismet::encoder::LinearMix>(dismet::parse_encoder("linear-mix:1,0.3;0.3,1"));
  CHECK(lm.matrix(0, 1) == 0.3);
  CHECK(std::get<dismet::encoder::AppendConstant>(dismet::parse_encoder("constant:2:1.5")).value == 1.5);
  CHECK_THROWS_AS(dismet::parse_encoder("unknown"), dismet::Error);
  CHECK_THROWS_AS(dismet::parse_encoder("duplicate:x"), dismet::Error);
}
