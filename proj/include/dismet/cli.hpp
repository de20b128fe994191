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

#include <iosfwd>
#include <string>
#include <vector>

namespace dismet::cli {

// Exit codes of the command-line tool.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 2;
inline constexpr int kMetricError = 3;
inline constexpr int kOracleFailure = 4;

// Names accepted by `eval --metrics`.
const std::vector<std::string>& metric_names();

// Runs one invocation; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dismet::cli
