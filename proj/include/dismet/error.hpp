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

#include <stdexcept>
#include <string>
#include <string_view>

namespace dismet {

enum class ErrorKind {
  // input validation
  RowMismatch,
  FactorOutOfRange,
  NonFiniteValue,
  IndexOutOfRange,
  LengthMismatch,
  ShapeMismatch,
  // io
  ParseError,
  BadMagic,
  TruncatedFile,
  VersionUnsupported,
  IOFailure,
  // metrics
  EmptySelection,
  NotAGrid,
  RankDeficient,
  DegenerateFactor,
  EstimatorFailure,
  InsufficientSamples,
  AllDimensionsPruned,
  UnsupportedBase,
  GridTooLarge,
};

std::string_view to_string(ErrorKind kind);

// True for errors caused by malformed or inconsistent inputs, as opposed to a
// metric that cannot be evaluated on otherwise valid data.
bool is_input_error(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dismet
