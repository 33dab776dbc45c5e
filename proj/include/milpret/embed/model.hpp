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
#include <memory>
#include <string>
#include <vector>

#include "milpret/embed/tape.hpp"
#include "milpret/graph/bipartite.hpp"

namespace milpret::embed {

struct ModelConfig {
  int emb_size = 64;
  int gcn_layers = 2;
  int sampled_nodes = 512;
  int attn_layers = 6;
  int attn_heads = 8;
  int ffn_dim = 0;  // 0 means 4 * emb_size
  int out_dim = 4096;
  double temperature = 1.0;
  double lr = 1e-3;
  int batch_size = 64;
  int epochs = 100;
  double split_ratio = 0.9;
  std::uint64_t seed = 0;

  int ffn() const { return ffn_dim > 0 ? ffn_dim : 4 * emb_size; }
  // Desk-scale preset: 128 sampled nodes, 256-dim output.
  static ModelConfig toy();
};

// Throws kInvalidConfig.
void validate_config(const ModelConfig& cfg);

// Tensors in declaration order:
//   var_mlp.{w1,b1,w2,b2}, cons_mlp.{w1,b1,w2,b2}, edge.{w,b}, summary.init,
//   conv<l>.{row_w,row_b,col_w,col_b,sum_var_w,sum_var_b,sum_cons_w,sum_cons_b},
//   attn<l>.{ln1_g,ln1_b,qkv_w,qkv_b,out_w,out_b,ln2_g,ln2_b,ff1_w,ff1_b,ff2_w,ff2_b},
//   head.{w,b}
// Weights are (in x out) and multiply row vectors from the right.
struct ModelParams {
  ModelConfig cfg;
  std::vector<std::string> names;
  std::vector<Mat> tensors;

  std::size_t count() const;  // total scalar parameters
  int index_of(const std::string& name) const;  // -1 when absent
};

// Closed form of count() for a config:
//   2E^2 + 30E + 4G(E^2 + E) + A(4E^2 + 2EF + 9E + F) + ED + D
std::size_t param_count(const ModelConfig& cfg);

// Weights ~ U(-1/sqrt(fan_in), 1/sqrt(fan_in)), biases 0, norm gains 1.
ModelParams init_model(const ModelConfig& cfg);

// Graph with the constant pieces the forward pass needs precomputed.
struct GraphInput {
  int n = 0;
  int m = 0;
  Mat var_feats;
  Mat cons_feats;
  std::shared_ptr<const SpMat> rows_by_cols;  // m x n incidence (1 per edge)
  std::shared_ptr<const SpMat> cols_by_rows;  // its transpose
  Mat row_edge_sum;  // m x 1, sum of edge features per constraint
  Mat row_degree;    // m x 1
  Mat col_edge_sum;  // n x 1
  Mat col_degree;    // n x 1
};

GraphInput prepare_graph(const graph::BipartiteGraph& g);

enum class NodeSelection {
  kSample,    // sampled_nodes draws (without replacement when possible)
  kAllNodes,  // every node, no sampling
};

// Builds the forward pass on `tape`; returns the 1 x D unit-norm output.
Tape::Id forward(Tape& tape, const ModelParams& params, const GraphInput& g,
                 std::uint64_t sample_seed, NodeSelection selection = NodeSelection::kSample);

Eigen::VectorXd encode_milp(const ModelParams& params, const GraphInput& g,
                            std::uint64_t sample_seed,
                            NodeSelection selection = NodeSelection::kSample);
Eigen::VectorXd encode_milp(const ModelParams& params, const graph::BipartiteGraph& g,
                            std::uint64_t sample_seed,
                            NodeSelection selection = NodeSelection::kSample);

}  // namespace milpret::embed
