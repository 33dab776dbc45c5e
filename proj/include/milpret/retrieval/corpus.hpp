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

#include <cstdint>
#include <string>
#include <vector>

#include "milpret/core/instance.hpp"
#include "milpret/embed/text.hpp"
#include "milpret/embed/train.hpp"
#include "milpret/generators/registry.hpp"
#include "milpret/graph/bipartite.hpp"

namespace milpret::retrieval {

// One generated instance with everything the pipeline derives from it.
struct CorpusItem {
  gen::GeneratorSpec spec;  // jittered params, seed and instance description
  MilpInstance instance;
  graph::BipartiteGraph graph;
};

struct CorpusOptions {
  int per_class = 20;
  std::uint64_t seed = 0;
  bool toy_params = true;  // class toy presets instead of defaults
  bool jitter = true;
  graph::FeaturizeOptions features;
  int threads = 0;
};

// Seed of the i-th instance of a class: derive_seed(seed, fnv(class) + i).
std::uint64_t instance_seed(std::uint64_t seed, const std::string& class_id, int i);

// Generates and featurizes per_class instances of every class; items are
// ordered by class (as given) then index.
std::vector<CorpusItem> build_corpus(const std::vector<std::string>& class_ids,
                                     const CorpusOptions& opts);

std::vector<embed::TrainingPair> make_pairs(const std::vector<CorpusItem>& items,
                                            const embed::TextEmbedder& text);

}  // namespace milpret::retrieval
