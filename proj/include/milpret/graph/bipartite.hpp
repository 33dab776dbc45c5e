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

#include <Eigen/Dense>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "milpret/core/instance.hpp"
#include "milpret/lp/branch_and_bound.hpp"
#include "milpret/lp/simplex.hpp"

namespace milpret::graph {

inline constexpr int kVarFeatures = 16;
inline constexpr int kConsFeatures = 7;

// Variable feature columns.
enum VarFeature : int {
  kNormCoef = 0,
  kTypeBinary = 1,
  kTypeInteger = 2,
  kTypeImplied = 3,
  kTypeContinuous = 4,
  kHasLb = 5,
  kHasUb = 6,
  kSolVal = 7,
  kSolFrac = 8,
  kSolAtLb = 9,
  kSolAtUb = 10,
  kBaseLower = 11,
  kBaseBasic = 12,
  kBaseUpper = 13,
  kBaseZero = 14,
  kPad = 15,  // constant 1.0
};

// Constraint feature columns.
enum ConsFeature : int {
  kRank = 0,
  kNormNnz = 1,
  kBias = 2,
  kRowAtLhs = 3,
  kRowAtRhs = 4,
  kDualSol = 5,
  kNormIntCols = 6,
};

struct Edge {
  int cons;
  int var;
  double feat;
};

struct BipartiteGraph {
  int n = 0;
  int m = 0;
  Eigen::MatrixXd var_feats;   // n x 16
  Eigen::MatrixXd cons_feats;  // m x 7
  std::vector<Edge> edges;     // row-major order of A
};

struct FeatureOptions {
  double at_bound_tol = 1e-6;
  double solval_clip = 10.0;
};

// Throws kDimensionMismatch when the solutions do not belong to `inst`.
BipartiteGraph build_bipartite(const MilpInstance& inst, const lp::LpSolution& sol,
                               const std::optional<lp::MilpSolution>& milp_sol = std::nullopt,
                               const FeatureOptions& opts = {});

struct FeaturizeOptions {
  lp::LpLimits lp;
  // Budget for the incumbent used as solval; when the search ends without
  // one, the LP relaxation values are used instead.
  lp::MilpLimits milp{.max_nodes = 200, .max_seconds = 10.0};
  bool use_incumbent = true;
  FeatureOptions features;
};

// Solve LP relaxation (+ bounded B&B) and build the graph.
BipartiteGraph featurize(const MilpInstance& inst, const FeaturizeOptions& opts = {});

// Debug dump: header line, "var_feats" block, "cons_feats" block, "edges"
// block of "cons var feat" triples, all numbers %.17g.
std::string dump_graph(const BipartiteGraph& g);
void write_graph_file(const BipartiteGraph& g, const std::filesystem::path& path);

}  // namespace milpret::graph
