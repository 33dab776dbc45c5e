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

// Maximum-weight independent set on an Erdos-Renyi graph G(n, p).
// Sampling: for u < v in lexicographic order, edge (u, v) kept when
// uniform() < edge_prob; if no edge survives, edge (0, 1) is added. Node
// weights are uniform integers in [1, max_weight]. Model: max sum w_v x_v,
// x_u + x_v <= 1 per edge, x binary.
#include "milpret/generators/registry.hpp"

namespace milpret::gen {
namespace {

MilpInstance generate(const Params& p, Rng& rng) {
  const int n = iparam(p, "n_nodes");
  const double prob = p.at("edge_prob");
  const int max_w = iparam(p, "max_weight");
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.uniform() < prob) edges.emplace_back(u, v);
    }
  }
  if (edges.empty()) edges.emplace_back(0, 1);
  InstanceBuilder b("IndependentSet", ObjectiveSense::kMaximize);
  for (int v = 0; v < n; ++v) b.add_binary(static_cast<double>(rng.uniform_int(1, max_w)));
  for (const auto& [u, v] : edges) {
    b.add_row({{u, 1.0}, {v, 1.0}}, RowSense::kLessEqual, 1.0);
  }
  return std::move(b).build();
}

std::string describe_params(const Params& p) {
  return "The MPS file, named 'IndependentSet', encodes a maximum weighted independent set "
         "problem on a random graph with " + format_param(p.at("n_nodes")) + " nodes, where each "
         "pair of nodes is joined by an edge with probability " + format_param(p.at("edge_prob")) +
         ". The objective is to maximize the total weight of the chosen nodes, with integer "
         "node weights up to " + format_param(p.at("max_weight")) + ". Every edge contributes "
         "one inequality stating that at most one of its two endpoints may be selected, and "
         "each binary variable indicates whether a node joins the independent set.";
}

}  // namespace

ClassDef make_independent_set_class() {
  ClassDef c;
  c.id = "IS";
  c.full_name = "Maximum Independent Set";
  c.schema = {{"edge_prob", false, 1e-6, 1.0, false},
              {"max_weight", true, 1, 1e9, false},
              {"n_nodes", true, 2, 1e6, true}};
  c.defaults = {{"n_nodes", 200}, {"edge_prob", 0.05}, {"max_weight", 100}};
  c.toy = {{"n_nodes", 80}, {"edge_prob", 0.08}, {"max_weight", 100}};
  c.size_exponent = 1.0;
  c.generate = generate;
  c.describe = describe_params;
  return c;
}

}  // namespace milpret::gen
