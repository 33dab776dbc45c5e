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

#include "milpret/graph/bipartite.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "milpret/core/error.hpp"

namespace milpret::graph {

BipartiteGraph build_bipartite(const MilpInstance& inst, const lp::LpSolution& sol,
                               const std::optional<lp::MilpSolution>& milp_sol,
                               const FeatureOptions& opts) {
  const int n = inst.num_vars();
  const int m = inst.num_rows();
  if (sol.x.size() != static_cast<std::size_t>(n) || sol.basis.size() != static_cast<std::size_t>(n) ||
      sol.y.size() != static_cast<std::size_t>(m) ||
      sol.activity.size() != static_cast<std::size_t>(m)) {
    fail(ErrorKind::kDimensionMismatch, "LP solution does not match the instance dimensions");
  }
  if (milp_sol && milp_sol->x_int && milp_sol->x_int->size() != static_cast<std::size_t>(n)) {
    fail(ErrorKind::kDimensionMismatch, "MILP solution does not match the instance dimensions");
  }
  const std::vector<double>& x = (milp_sol && milp_sol->x_int) ? *milp_sol->x_int : sol.x;
  const double eps = opts.at_bound_tol;

  double c_norm = 0.0;
  for (double v : inst.c) c_norm += v * v;
  c_norm = std::sqrt(c_norm);
  double x_inf = 0.0;
  for (double v : x) x_inf = std::max(x_inf, std::abs(v));
  const double x_scale = std::max(1.0, x_inf);

  BipartiteGraph g;
  g.n = n;
  g.m = m;
  g.var_feats = Eigen::MatrixXd::Zero(n, kVarFeatures);
  for (int j = 0; j < n; ++j) {
    auto f = g.var_feats.row(j);
    f(kNormCoef) = c_norm > 0.0 ? inst.c[j] / c_norm : 0.0;
    switch (inst.integrality[j]) {
      case VarType::kBinary: f(kTypeBinary) = 1.0; break;
      case VarType::kInteger: f(kTypeInteger) = 1.0; break;
      case VarType::kImpliedInteger: f(kTypeImplied) = 1.0; break;
      case VarType::kContinuous: f(kTypeContinuous) = 1.0; break;
    }
    const double l = inst.lower[j];
    const double u = inst.upper[j];
    f(kHasLb) = l > -kInf ? 1.0 : 0.0;
    f(kHasUb) = u < kInf ? 1.0 : 0.0;
    f(kSolVal) = std::clamp(x[j] / x_scale, -opts.solval_clip, opts.solval_clip);
    if (is_integral(inst.integrality[j])) {
      f(kSolFrac) = std::min(x[j] - std::floor(x[j]), std::ceil(x[j]) - x[j]);
    }
    f(kSolAtLb) = (l > -kInf && std::abs(x[j] - l) <= eps) ? 1.0 : 0.0;
    f(kSolAtUb) = (u < kInf && std::abs(x[j] - u) <= eps) ? 1.0 : 0.0;
    switch (sol.basis[j]) {
      case lp::BasisStatus::kAtLower: f(kBaseLower) = 1.0; break;
      case lp::BasisStatus::kBasic: f(kBaseBasic) = 1.0; break;
      case lp::BasisStatus::kAtUpper: f(kBaseUpper) = 1.0; break;
      case lp::BasisStatus::kZero: f(kBaseZero) = 1.0; break;
    }
    f(kPad) = 1.0;
  }

  g.cons_feats = Eigen::MatrixXd::Zero(m, kConsFeatures);
  g.edges.reserve(static_cast<std::size_t>(inst.nnz()));
  for (int i = 0; i < m; ++i) {
    const auto cols = inst.row_cols(i);
    const auto vals = inst.row_vals(i);
    double row_norm = 0.0;
    int int_cols = 0;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      row_norm += vals[k] * vals[k];
      if (is_integral(inst.integrality[cols[k]])) ++int_cols;
    }
    row_norm = std::sqrt(row_norm);
    auto f = g.cons_feats.row(i);
    f(kRank) = 0.0;
    f(kNormNnz) = static_cast<double>(cols.size()) / n;
    f(kBias) = inst.b[i] / row_norm;
    const bool tight = std::abs(sol.activity[i] - inst.b[i]) <= eps;
    const RowSense s = inst.senses[i];
    f(kRowAtLhs) = (tight && s != RowSense::kLessEqual) ? 1.0 : 0.0;
    f(kRowAtRhs) = (tight && s != RowSense::kGreaterEqual) ? 1.0 : 0.0;
    f(kDualSol) = sol.y[i] / (row_norm * std::max(c_norm, 1.0));
    f(kNormIntCols) = static_cast<double>(int_cols) / static_cast<double>(cols.size());
    for (std::size_t k = 0; k < cols.size(); ++k) {
      g.edges.push_back({i, cols[k], vals[k] / row_norm});
    }
  }
  return g;
}

BipartiteGraph featurize(const MilpInstance& inst, const FeaturizeOptions& opts) {
  const auto lp_sol = lp::solve_lp_relaxation(inst, opts.lp);
  std::optional<lp::MilpSolution> milp;
  if (opts.use_incumbent) milp = lp::solve_milp(inst, opts.milp);
  return build_bipartite(inst, lp_sol, milp, opts.features);
}

std::string dump_graph(const BipartiteGraph& g) {
  std::string out;
  char buf[40];
  const auto num = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
  };
  out += "bipartite_graph v1 n " + std::to_string(g.n) + " m " + std::to_string(g.m) +
         " edges " + std::to_string(g.edges.size()) + "\n";
  const auto block = [&](const char* name, const Eigen::MatrixXd& mat) {
    out += name;
    out += '\n';
    for (Eigen::Index r = 0; r < mat.rows(); ++r) {
      for (Eigen::Index c = 0; c < mat.cols(); ++c) {
        if (c) out += ' ';
        num(mat(r, c));
      }
      out += '\n';
    }
  };
  block("var_feats", g.var_feats);
  block("cons_feats", g.cons_feats);
  out += "edges\n";
  for (const auto& e : g.edges) {
    out += std::to_string(e.cons) + ' ' + std::to_string(e.var) + ' ';
    num(e.feat);
    out += '\n';
  }
  return out;
}

void write_graph_file(const BipartiteGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::kIo, "cannot write " + path.string());
  out << dump_graph(g);
}

}  // namespace milpret::graph
