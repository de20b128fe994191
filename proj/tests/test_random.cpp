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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "dismet/parallel.hpp"
#include "dismet/random.hpp"

namespace {

// Reference xoshiro256** step, written from the published algorithm.
struct RefXoshiro {
  std::uint64_t s[4];
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t next() {
    const std::uint64_t result = rotl(s[1] * 5, 7) * 9;
    const std::uint64_t t = s[1] << 17;
    s[2] ^= s[0];
    s[3] ^= s[1];
    s[1] ^= s[2];
    s[0] ^= s[3];
    s[2] ^= t;
    s[3] = rotl(s[3], 45);
    return result;
  }
};

}  // namespace

TEST_CASE("splitmix64 matches its published first outputs for state 0") {
  std::uint64_t state = 0;
  CHECK(dismet::splitmix64(state) == 0xe220a8397b1dcdafULL);
  CHECK(dismet::splitmix64(state) == 0x6e789e6aa1b965f4ULL);
  CHECK(dismet::splitmix64(state) == 0x06c45d188009454fULL);
}

TEST_CASE("xoshiro256** follows the reference step after splitmix seeding") {
  std::uint64_t state = 42;
  RefXoshiro ref{};
  for (auto& word : ref.s) word = dismet::splitmix64(state);
  dismet::Xoshiro256 rng(42);
  for (int i = 0; i < 1000; ++i) REQUIRE(rng() == ref.next());
}

TEST_CASE("below stays in range and is roughly uniform") {
  dismet::Xoshiro256 rng(7);
  std::vector<int> counts(6, 0);
  const int n = 60000;
  for (int i = 0; i < n; ++i) {
    const auto v = rng.below(6);
    REQUIRE(v < 6);
    ++counts[v];
  }
  for (int c : counts) CHECK(std::abs(c - n / 6) < 5 * std::sqrt(n / 6.0));
}

TEST_CASE("uniform lies in [0, 1) and normal has unit moments") {
  dismet::Xoshiro256 rng(3);
  double sum = 0.0;
  double sq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    const double z = rng.normal();
    sum += z;
    sq += z * z;
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(std::abs(sq / n - 1.0) < 0.02);
}

TEST_CASE("derived streams are deterministic and distinct") {
  auto a = dismet::derive_stream(1, "sap", 0);
  auto b = dismet::derive_stream(1, "sap", 0);
  CHECK(a() == b());
  std::set<std::uint64_t> firsts;
  firsts.insert(dismet::derive_stream(1, "sap", 0)());
  firsts.insert(dismet::derive_stream(1, "sap", 1)());
  firsts.insert(dismet::derive_stream(2, "sap", 0)());
  firsts.insert(dismet::derive_stream(1, "betavae", 0)());
  CHECK(firsts.size() == 4);
  CHECK(dismet::tag_hash("") == 0xcbf29ce484222325ULL);
  CHECK(dismet::tag_hash("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("parallel_for visits every index once for any thread count") {
  for (std::size_t threads : {1, 2, 3, 8}) {
    dismet::set_thread_count(threads);
    std::vector<int> hits(101, 0);
    dismet::parallel_for(hits.size(), [&](std::size_t i) { ++hits[i]; });
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  }
  dismet::set_thread_count(1);
}

TEST_CASE("parallel_for rethrows and nested loops run") {
  dismet::set_thread_count(4);
  CHECK_THROWS_AS(dismet::parallel_for(10,
                                       [](std::size_t i) {
                                         if (i == 7) throw std::runtime_error("boom");
                                       }),
                  std::runtime_error);
  std::atomic<int> total{0};
  dismet::parallel_for(4, [&](std::size_t) {
    dismet::parallel_for(5, [&](std::size_t) { ++total; });
  });
  CHECK(total == 20);
  dismet::set_thread_count(1);
}
