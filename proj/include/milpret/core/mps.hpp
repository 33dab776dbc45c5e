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

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "milpret/core/instance.hpp"

namespace milpret {

// Free-format MPS reader.
//
// Sections: NAME, OBJSENSE, ROWS, COLUMNS, RHS, RANGES, BOUNDS, ENDATA. The
// first N row is the objective; further N rows are ignored with a warning.
// MARKER INTORG/INTEND toggles integrality. Integral columns whose final
// bounds are exactly [0, 1] are reported as Binary. A RANGES entry on row r
// turns r into one side of the interval and appends a row named "<r>_rng" for
// the other side. Values with magnitude >= 1e30 are treated as infinite.
//
// Throws Error with kMalformedSection, kUnknownRowOrColumn or kEmptyProblem.
MilpInstance parse_mps(std::string_view text, std::vector<std::string>* warnings = nullptr);

// Canonical writer: single-space separated fields, one matrix entry per line,
// %.17g numbers, integral columns wrapped in MARKER INTORG/INTEND blocks,
// binaries emitted as BV bounds, OBJSENSE MAX only for maximization.
std::string write_mps(const MilpInstance& inst);

MilpInstance read_mps_file(const std::filesystem::path& path,
                           std::vector<std::string>* warnings = nullptr);
void write_mps_file(const MilpInstance& inst, const std::filesystem::path& path);

}  // namespace milpret
