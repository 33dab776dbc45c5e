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

// Flat "key = value" run configuration shared by all subcommands. Lines
// starting with '#' are comments. Values from --set flags are applied after
// the file, and `preset` is always applied before the other model keys.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "milpret/embed/model.hpp"
#include "milpret/embed/train.hpp"

namespace milpret::cli {

struct RunConfig {
  std::string preset = "toy";  // toy | default
  embed::ModelConfig model = embed::ModelConfig::toy();
  std::vector<std::string> classes = {"SC", "IS", "CA", "KS", "CFL", "FCNF", "GA", "SAT"};
  embed::LrSchedule lr_schedule = embed::LrSchedule::kConstant;
  int per_class = 20;
  bool toy_params = true;
  std::uint64_t corpus_seed = 1;
  std::uint64_t sample_seed = 0;
  std::int64_t max_nodes = 50'000;
  double max_seconds = 50.0;
  int kway_trials = 200;
  std::uint64_t eval_seed = 20240917;
  int threads = 0;
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

// Throws kInvalidConfig on malformed lines; kIo when the file is missing.
KeyValues read_config_file(const std::filesystem::path& path);
KeyValues parse_config_text(const std::string& text);

// Throws kInvalidConfig for unknown keys or unparsable values.
RunConfig apply_config(RunConfig base, const KeyValues& kv);

std::string print_config(const RunConfig& cfg);

}  // namespace milpret::cli
