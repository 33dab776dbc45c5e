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
#include <filesystem>
#include <string>
#include <vector>

#include "milpret/core/instance.hpp"
#include "milpret/embed/model.hpp"
#include "milpret/graph/bipartite.hpp"

namespace milpret::sim {

// Featurize (LP relaxation + bounded B&B) and encode one instance.
Eigen::VectorXd embed_instance(const embed::ModelParams& params, const MilpInstance& inst,
                               std::uint64_t sample_seed,
                               const graph::FeaturizeOptions& features = {});

// Dot product of two unit vectors, clamped to [-1, 1].
double cosine(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

double embed_sim(const embed::ModelParams& params, const MilpInstance& p, const MilpInstance& q,
                 std::uint64_t sample_seed, const graph::FeaturizeOptions& features = {});

struct SimMatrix {
  std::vector<std::string> labels;
  Eigen::MatrixXd values;  // symmetric, in [-1, 1]
};

// Rows of `embeddings` are unit vectors; only the upper triangle is computed
// and mirrored, so the result is exactly symmetric.
SimMatrix sim_matrix_from_embeddings(std::vector<std::string> labels, const Eigen::MatrixXd& embeddings);

SimMatrix sim_matrix(const embed::ModelParams& params, const std::vector<MilpInstance>& instances,
                     std::vector<std::string> labels, std::uint64_t sample_seed,
                     const graph::FeaturizeOptions& features = {}, int threads = 0);

// Header "id,<label>,..." then one "<label>,<values>" row per instance.
std::string to_csv(const SimMatrix& m);
void write_csv(const SimMatrix& m, const std::filesystem::path& path);

}  // namespace milpret::sim
