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

// Brute-force LP oracle by vertex enumeration, for small bounded problems.

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "milpret/core/instance.hpp"
#include "milpret/lp/simplex.hpp"

namespace milpret::testing {

// Minimum (in the instance's own sense) over all feasible vertices, or
// nullopt when no vertex is feasible. Requires finite bounds.
inline std::optional<double> enumerate_vertices(const MilpInstance& inst, double tol = 1e-7) {
  const int n = inst.num_vars();
  const int m = inst.num_rows();
  // Candidate hyperplanes: rows (a_i x = b_i) then bounds (x_j = l_j, x_j = u_j).
  std::vector<Eigen::VectorXd> normals;
  std::vector<double> rhs;
  for (int i = 0; i < m; ++i) {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
    const auto cols = inst.row_cols(i);
    const auto vals = inst.row_vals(i);
    for (std::size_t k = 0; k < cols.size(); ++k) a(cols[k]) = vals[k];
    normals.push_back(a);
    rhs.push_back(inst.b[i]);
  }
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Unit(n, j);
    normals.push_back(e);
    rhs.push_back(inst.lower[j]);
    normals.push_back(e);
    rhs.push_back(inst.upper[j]);
  }
  const int total = static_cast<int>(normals.size());
  const double sign = inst.objective_sense == ObjectiveSense::kMinimize ? 1.0 : -1.0;
  std::optional<double> best;
  // Iterate over all n-subsets of the hyperplanes.
  std::vector<bool> mask(total, false);
  std::fill(mask.end() - n, mask.end(), true);
  do {
    Eigen::MatrixXd A(n, n);
    Eigen::VectorXd b(n);
    int r = 0;
    for (int k = 0; k < total; ++k) {
      if (!mask[k]) continue;
      A.row(r) = normals[k].transpose();
      b(r) = rhs[k];
      ++r;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    if (lu.rank() < n) continue;
    const Eigen::VectorXd x = lu.solve(b);
    std::vector<double> xv(x.data(), x.data() + n);
    bool ok = true;
    for (int j = 0; j < n && ok; ++j) {
      ok = xv[j] >= inst.lower[j] - tol && xv[j] <= inst.upper[j] + tol;
    }
    if (!ok) continue;
    const auto act = row_activity(inst, xv);
    for (int i = 0; i < m && ok; ++i) {
      switch (inst.senses[i]) {
        case RowSense::kLessEqual: ok = act[i] <= inst.b[i] + tol; break;
        case RowSense::kGreaterEqual: ok = act[i] >= inst.b[i] - tol; break;
        case RowSense::kEqual: ok = std::abs(act[i] - inst.b[i]) <= tol; break;
      }
    }
    if (!ok) continue;
    const double obj = objective_value(inst, xv);
    if (!best || sign * obj < sign * *best) best = obj;
  } while (std::next_permutation(mask.begin(), mask.end()));
  return best;
}

inline MilpInstance random_lp(std::mt19937_64& rng, bool maximize) {
  std::uniform_int_distribution<int> dim(1, 6);
  std::uniform_int_distribution<int> coef_raw(-5, 4);
  const auto coef = [&](std::mt19937_64& g) {
    const int v = coef_raw(g);
    return static_cast<double>(v >= 0 ? v + 1 : v);
  };
  std::uniform_int_distribution<int> sense(0, 2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = dim(rng);
  const int m = dim(rng);
  InstanceBuilder b("rand", maximize ? ObjectiveSense::kMaximize : ObjectiveSense::kMinimize);
  for (int j = 0; j < n; ++j) {
    const double lo = std::floor(unit(rng) * 4.0) - 2.0;
    const double hi = lo + 1.0 + std::floor(unit(rng) * 5.0);
    b.add_var(coef(rng), lo, hi, VarType::kContinuous);
  }
  for (int i = 0; i < m; ++i) {
    std::vector<std::pair<int, double>> terms;
    for (int j = 0; j < n; ++j) {
      if (unit(rng) < 0.7) terms.emplace_back(j, coef(rng));
    }
    if (terms.empty()) terms.emplace_back(0, 1.0);
    const int s = sense(rng);
    // Mostly loose right-hand sides keep a good share of instances feasible.
    const double rhs = coef(rng) + (s == 0 ? 4.0 : (s == 1 ? -4.0 : 0.0));
    b.add_row(std::move(terms),
              s == 0 ? RowSense::kLessEqual : (s == 1 ? RowSense::kGreaterEqual : RowSense::kEqual),
              rhs);
  }
  return std::move(b).build();
}

// Dual bound y'b + sum_j min/max over [l_j, u_j] of r_j x_j; requires
// sign-feasible duals. Returns nullopt when the duals have the wrong sign.
inline std::optional<double> dual_bound(const MilpInstance& inst, const lp::LpSolution& sol) {
  const bool minimize = inst.objective_sense == ObjectiveSense::kMinimize;
  const double tol = 1e-7;
  std::vector<double> r = inst.c;
  double bound = 0.0;
  for (int i = 0; i < inst.num_rows(); ++i) {
    const double y = sol.y[i];
    const double s = minimize ? y : -y;  // >= 0 means "pushes activity up"
    if (inst.senses[i] == RowSense::kLessEqual && s > tol) return std::nullopt;
    if (inst.senses[i] == RowSense::kGreaterEqual && s < -tol) return std::nullopt;
    bound += y * inst.b[i];
    const auto cols = inst.row_cols(i);
    const auto vals = inst.row_vals(i);
    for (std::size_t k = 0; k < cols.size(); ++k) r[cols[k]] -= y * vals[k];
  }
  for (int j = 0; j < inst.num_vars(); ++j) {
    const bool take_lower = minimize ? r[j] > 0 : r[j] < 0;
    if (std::abs(r[j]) <= 1e-12) continue;
    const double v = take_lower ? inst.lower[j] : inst.upper[j];
    if (std::isinf(v)) return std::nullopt;
    bound += r[j] * v;
  }
  return bound;
}

}  // namespace milpret::testing
