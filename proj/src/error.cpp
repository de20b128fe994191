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

#include "dismet/error.hpp"

namespace dismet {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::RowMismatch: return "RowMismatch";
    case ErrorKind::FactorOutOfRange: return "FactorOutOfRange";
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::BadMagic: return "BadMagic";
    case ErrorKind::TruncatedFile: return "TruncatedFile";
    case ErrorKind::VersionUnsupported: return "VersionUnsupported";
    case ErrorKind::IOFailure: return "IOFailure";
    case ErrorKind::EmptySelection: return "EmptySelection";
    case ErrorKind::NotAGrid: return "NotAGrid";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::DegenerateFactor: return "DegenerateFactor";
    case ErrorKind::EstimatorFailure: return "EstimatorFailure";
    case ErrorKind::InsufficientSamples: return "InsufficientSamples";
    case ErrorKind::AllDimensionsPruned: return "AllDimensionsPruned";
    case ErrorKind::UnsupportedBase: return "UnsupportedBase";
    case ErrorKind::GridTooLarge: return "GridTooLarge";
  }
  return "Unknown";
}

bool is_input_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::RowMismatch:
    case ErrorKind::FactorOutOfRange:
    case ErrorKind::NonFiniteValue:
    case ErrorKind::IndexOutOfRange:
    case ErrorKind::LengthMismatch:
    case ErrorKind::ShapeMismatch:
    case ErrorKind::ParseError:
    case ErrorKind::BadMagic:
    case ErrorKind::TruncatedFile:
    case ErrorKind::VersionUnsupported:
    case ErrorKind::IOFailure:
    case ErrorKind::GridTooLarge:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace dismet
