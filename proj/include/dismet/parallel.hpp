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
#include <functional>

namespace dismet {

// Worker count used by parallel loops: the last value passed to
// set_thread_count, else DISMET_THREADS, else the hardware concurrency.
std::size_t thread_count();
void set_thread_count(std::size_t threads);

// Calls body(i) for every i in [0, n). Indices are split into contiguous
// chunks, one per worker. Each call must only write state owned by index i;
// results are then independent of the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace dismet
