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

#include "milpret/lp/branch_and_bound.hpp"

#include <chrono>
#include <cmath>

#include "milpret/lp/simplex.hpp"

namespace milpret::lp {
namespace {

constexpr double kIntTol = 1e-6;

struct BoundChange {
  int var;
  double lower;
  double upper;
};

struct Node {
  std::vector<BoundChange> changes;  // applied on top of the root bounds
};

}  // namespace

MilpSolution solve_milp(const MilpInstance& inst, const MilpLimits& limits) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const double sign = inst.objective_sense == ObjectiveSense::kMinimize ? 1.0 : -1.0;
  const int n = inst.num_vars();

  MilpSolution out;
  std::vector<double> root_lower = inst.lower;
  std::vector<double> root_upper = inst.upper;
  for (int j = 0; j < n; ++j) {
    if (!is_integral(inst.integrality[j])) continue;
    if (root_lower[j] != -kInf) root_lower[j] = std::ceil(root_lower[j] - kIntTol);
    if (root_upper[j] != kInf) root_upper[j] = std::floor(root_upper[j] + kIntTol);
    if (root_lower[j] > root_upper[j]) {
      out.status = limits.max_nodes > 0 ? MilpStatus::kProvenInfeasible : MilpStatus::kLimitReached;
      return out;
    }
  }

  DenseSimplex simplex(inst);
  std::optional<double> incumbent_obj;  // minimization sense
  std::vector<double> incumbent;
  bool stopped = false;
  std::vector<Node> stack;
  stack.push_back(Node{});
  std::vector<double> lo(n), hi(n);
  bool first = true;

  const auto try_point = [&](const std::vector<double>& x) {
    if (!is_feasible_point(inst, x)) return;
    const double obj = sign * objective_value(inst, x);
    if (!incumbent_obj || obj < *incumbent_obj - 1e-9) {
      incumbent_obj = obj;
      incumbent = x;
    }
  };

  while (!stack.empty()) {
    if (out.nodes_explored >= limits.max_nodes ||
        std::chrono::duration<double>(Clock::now() - start).count() > limits.max_seconds) {
      stopped = true;
      break;
    }
    Node node = std::move(stack.back());
    stack.pop_back();
    ++out.nodes_explored;

    lo = root_lower;
    hi = root_upper;
    for (const auto& ch : node.changes) {
      lo[ch.var] = ch.lower;
      hi[ch.var] = ch.upper;
    }
    simplex.set_bounds(lo, hi);
    const std::int64_t budget = simplex.iterations() + limits.max_lp_iters_per_node;
    const LpStatus st = first ? simplex.solve(budget) : simplex.resolve(budget);
    if (first && st == LpStatus::kOptimal) out.root_bound = sign * simplex.objective_min_sense();
    first = false;
    if (st == LpStatus::kInfeasible) continue;
    if (st != LpStatus::kOptimal) {
      stopped = true;
      break;
    }
    const double bound = simplex.objective_min_sense();
    if (incumbent_obj &&
        bound >= *incumbent_obj - 1e-9 * std::max(1.0, std::abs(*incumbent_obj))) {
      continue;
    }
    const auto x = simplex.x();
    int branch = -1;
    double best_frac = kIntTol;
    for (int j = 0; j < n; ++j) {
      if (!is_integral(inst.integrality[j])) continue;
      const double f = x[j] - std::floor(x[j]);
      const double dist = std::min(f, 1.0 - f);
      if (dist > best_frac + 1e-12) {
        best_frac = dist;
        branch = j;
      }
    }
    std::vector<double> point(x.begin(), x.end());
    if (branch < 0) {
      for (int j = 0; j < n; ++j) {
        if (is_integral(inst.integrality[j])) point[j] = std::round(point[j]);
      }
      try_point(point);
    } else {
      for (int mode = 0; mode < 3; ++mode) {
        std::vector<double> r = point;
        for (int j = 0; j < n; ++j) {
          if (!is_integral(inst.integrality[j])) continue;
          r[j] = mode == 0 ? std::round(r[j])
                           : (mode == 1 ? std::ceil(r[j] - kIntTol) : std::floor(r[j] + kIntTol));
        }
        try_point(r);
      }
    }
    if (incumbent_obj && limits.stop_at_first_incumbent) {
      stopped = true;
      break;
    }
    if (branch < 0) continue;

    const double v = x[branch];
    Node down{node.changes};
    down.changes.push_back({branch, lo[branch], std::floor(v)});
    Node up{std::move(node.changes)};
    up.changes.push_back({branch, std::ceil(v), hi[branch]});
    if (v - std::floor(v) >= 0.5) {
      stack.push_back(std::move(down));
      stack.push_back(std::move(up));
    } else {
      stack.push_back(std::move(up));
      stack.push_back(std::move(down));
    }
  }

  if (incumbent_obj) {
    out.x_int = incumbent;
    out.obj = objective_value(inst, incumbent);
  }
  if (stopped) {
    out.status = MilpStatus::kLimitReached;
  } else {
    out.status = incumbent_obj ? MilpStatus::kFeasible : MilpStatus::kProvenInfeasible;
  }
  return out;
}

Feasibility check_feasible(const MilpInstance& inst, MilpLimits limits) {
  limits.stop_at_first_incumbent = true;
  const auto sol = solve_milp(inst, limits);
  if (sol.x_int) return Feasibility::kFeasible;
  if (sol.status == MilpStatus::kProvenInfeasible) return Feasibility::kInfeasible;
  return Feasibility::kUnknown;
}

}  // namespace milpret::lp
