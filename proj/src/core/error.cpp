// Copyright 2026 The milpret Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "milpret/core/error.hpp"

namespace milpret {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kMalformedSection: return "MalformedSection";
    case ErrorKind::kUnknownRowOrColumn: return "UnknownRowOrColumn";
    case ErrorKind::kEmptyProblem: return "EmptyProblem";
    case ErrorKind::kInvalidInstance: return "InvalidInstance";
    case ErrorKind::kUnknownClass: return "UnknownClass";
    case ErrorKind::kInvalidParams: return "InvalidParams";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kInvalidConfig: return "InvalidConfig";
    case ErrorKind::kShapeMismatch: return "ShapeMismatch";
    case ErrorKind::kEmptyText: return "EmptyText";
    case ErrorKind::kDegenerateBatch: return "DegenerateBatch";
    case ErrorKind::kInvalidK: return "InvalidK";
    case ErrorKind::kDegenerateGroup: return "DegenerateGroup";
    case ErrorKind::kEmptyLibrary: return "EmptyLibrary";
    case ErrorKind::kCorruptLibrary: return "CorruptLibrary";
    case ErrorKind::kVersionMismatch: return "VersionMismatch";
    case ErrorKind::kIo: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
      kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace milpret
