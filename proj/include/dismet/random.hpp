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

#include <array>
#include <cstdint>
#include <string_view>

namespace dismet {

// xoshiro256** (Blackman & Vigna). Seeded through splitmix64 so any 64-bit
// seed gives a well-mixed nonzero state.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()();

  // Uniform in [0, 1) with 53 random bits.
  double uniform();
  // Uniform integer in [0, bound); bound must be positive. Rejection sampling,
  // so the stream consumption is fully specified.
  std::uint64_t below(std::uint64_t bound);
  // Standard normal via Box-Muller; caches the second variate of each pair.
  double normal();

 private:
  std::array<std::uint64_t, 4> s_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

std::uint64_t splitmix64(std::uint64_t& state);

// Stable 64-bit FNV-1a hash for metric tags.
std::uint64_t tag_hash(std::string_view tag);

// Independent stream for (run seed, metric tag, draw index), so results never
// depend on the order in which draws are evaluated.
Xoshiro256 derive_stream(std::uint64_t seed, std::string_view tag, std::uint64_t index);

}  // namespace dismet
