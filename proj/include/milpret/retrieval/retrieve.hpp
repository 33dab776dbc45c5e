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
#include "milpret/embed/model.hpp"
#include "milpret/generators/registry.hpp"
#include "milpret/graph/bipartite.hpp"
#include "milpret/retrieval/library.hpp"

namespace milpret::retrieval {

struct RetrievalResult {
  std::string class_id;
  double score = 0.0;
  gen::GeneratorSpec generator;
  std::size_t entry_index = 0;
  std::size_t instance_index = 0;  // nearest stored instance within the entry
};

struct RetrieveOptions {
  std::uint64_t sample_seed = 0;
  graph::FeaturizeOptions features;
};

// Best entry for an already computed target embedding.
RetrievalResult retrieve_embedding(const Library& lib, const Eigen::VectorXd& target);

RetrievalResult retrieve(const Library& lib, const embed::ModelParams& params,
                         const MilpInstance& target, const RetrieveOptions& opts = {});

struct GenerateOptions {
  RetrieveOptions retrieve;
  std::uint64_t seed = 0;  // run k uses derive_seed(seed, k)
  bool scale_to_target = false;
  int calibration_runs = 3;
  std::vector<std::string>* warnings = nullptr;
};

struct GenerationResult {
  RetrievalResult retrieved;
  gen::Params params;       // params actually executed
  double scale_factor = 1.0;
  std::vector<MilpInstance> instances;
};

// Retrieves, then executes the retrieved generator m times. With
// scale_to_target, size params are first multiplied by
// (target n_vars / median calibration n_vars)^(1/size_exponent); if that
// leaves the valid ranges the unscaled params are used and a warning added.
GenerationResult retrieve_and_generate(const Library& lib, const embed::ModelParams& params,
                                       const MilpInstance& target, int m,
                                       const GenerateOptions& opts = {});

}  // namespace milpret::retrieval
