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

#include <gtest/gtest.h>

#include <cmath>

#include "lp_oracle.hpp"
#include "milpret/generators/registry.hpp"
#include "milpret/lp/branch_and_bound.hpp"
#include "milpret/lp/simplex.hpp"

namespace milpret::lp {
namespace {

TEST(Simplex, HandExample) {
  InstanceBuilder b("hand");
  const int x = b.add_var(-1.0, 0.0, 1.0, VarType::kContinuous);
  const int y = b.add_var(-1.0, 0.0, 1.0, VarType::kContinuous);
  b.add_row({{x, 1.0}, {y, 1.0}}, RowSense::kLessEqual, 1.0);
  const auto inst = std::move(b).build();
  const auto sol = solve_lp_relaxation(inst);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.obj, -1.0, 1e-9);
  EXPECT_NEAR(sol.x[0] + sol.x[1], 1.0, 1e-9);
  int basic = 0;
  for (auto s : sol.basis) basic += s == BasisStatus::kBasic;
  EXPECT_EQ(basic, 1);
}

TEST(Simplex, Infeasible) {
  InstanceBuilder b("inf");
  const int x = b.add_var(1.0, 0.0, kInf, VarType::kContinuous);
  b.add_row({{x, 1.0}}, RowSense::kLessEqual, -1.0);
  EXPECT_EQ(solve_lp_relaxation(std::move(b).build()).status, LpStatus::kInfeasible);
}

TEST(Simplex, Unbounded) {
  InstanceBuilder b("unb", ObjectiveSense::kMaximize);
  const int x = b.add_var(1.0, 0.0, kInf, VarType::kContinuous);
  const int y = b.add_var(0.0, 0.0, kInf, VarType::kContinuous);
  b.add_row({{x, 1.0}, {y, -1.0}}, RowSense::kLessEqual, 1.0);
  EXPECT_EQ(solve_lp_relaxation(std::move(b).build()).status, LpStatus::kUnbounded);
}

TEST(Simplex, MatchesVertexEnumeration) {
  std::mt19937_64 rng(20260101);
  int optimal = 0;
  for (int t = 0; t < 200; ++t) {
    const auto inst = milpret::testing::random_lp(rng, t % 2 == 1);
    const auto oracle = milpret::testing::enumerate_vertices(inst);
    const auto sol = solve_lp_relaxation(inst);
    if (!oracle) {
      EXPECT_EQ(sol.status, LpStatus::kInfeasible) << "case " << t;
      continue;
    }
    ASSERT_EQ(sol.status, LpStatus::kOptimal) << "case " << t;
    ++optimal;
    EXPECT_NEAR(sol.obj, *oracle, 1e-6) << "case " << t;
    EXPECT_TRUE(is_feasible_point(inst, sol.x, 1e-7, 1.0)) << "case " << t;
    const auto dual = milpret::testing::dual_bound(inst, sol);
    ASSERT_TRUE(dual.has_value()) << "case " << t;
    EXPECT_NEAR(*dual, sol.obj, 1e-6) << "case " << t;
  }
  EXPECT_GE(optimal, 40);
}

TEST(Simplex, ResolveMatchesColdSolve) {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 100; ++t) {
    const auto inst = milpret::testing::random_lp(rng, t % 2 == 0);
    DenseSimplex warm(inst);
    if (warm.solve(100000) != LpStatus::kOptimal) continue;
    auto lo = inst.lower;
    auto hi = inst.upper;
    const int j = t % inst.num_vars();
    const double mid = std::floor(warm.x()[j]);
    if (t % 3 == 0) hi[j] = std::max(lo[j], mid); else lo[j] = std::min(hi[j], mid + 1.0);
    warm.set_bounds(lo, hi);
    const auto ws = warm.resolve(100000);
    auto copy = inst;
    copy.lower = lo;
    copy.upper = hi;
    const auto cold = solve_lp_relaxation(copy);
    ASSERT_EQ(ws == LpStatus::kOptimal, cold.status == LpStatus::kOptimal) << "case " << t;
    if (ws == LpStatus::kOptimal) {
      EXPECT_NEAR(warm.solution(ws).obj, cold.obj, 1e-6) << "case " << t;
    }
  }
}

TEST(BranchAndBound, Knapsack) {
  InstanceBuilder b("ks", ObjectiveSense::kMaximize);
  const int x1 = b.add_binary(3.0);
  const int x2 = b.add_binary(2.0);
  b.add_row({{x1, 2.0}, {x2, 2.0}}, RowSense::kLessEqual, 3.0);
  const auto inst = std::move(b).build();
  const auto sol = solve_milp(inst);
  ASSERT_EQ(sol.status, MilpStatus::kFeasible);
  EXPECT_NEAR(*sol.obj, 3.0, 1e-9);
  EXPECT_NEAR((*sol.x_int)[0], 1.0, 1e-9);
  EXPECT_NEAR((*sol.x_int)[1], 0.0, 1e-9);
  EXPECT_EQ(check_feasible(inst), Feasibility::kFeasible);
}

TEST(BranchAndBound, SmallSetCover) {
  const gen::Params p{{"n_rows", 20}, {"n_cols", 40}, {"density", 0.2}, {"max_coef", 100}};
  const auto inst = gen::generate_instance(gen::make_spec("SC", p, 3));
  const auto sol = solve_milp(inst);
  ASSERT_EQ(sol.status, MilpStatus::kFeasible);
  EXPECT_TRUE(is_feasible_point(inst, *sol.x_int));
  const auto lp = solve_lp_relaxation(inst);
  EXPECT_GE(*sol.obj, lp.obj - 1e-6);
  EXPECT_EQ(check_feasible(inst), Feasibility::kFeasible);
  const auto again = solve_milp(inst);
  EXPECT_EQ(*again.x_int, *sol.x_int);
  EXPECT_EQ(again.nodes_explored, sol.nodes_explored);
}

TEST(BranchAndBound, IntegerGapInfeasible) {
  InstanceBuilder b("gap");
  const int x = b.add_var(1.0, 0.2, 0.8, VarType::kInteger);
  b.add_row({{x, 1.0}}, RowSense::kGreaterEqual, 0.0);
  const auto inst = std::move(b).build();
  EXPECT_EQ(solve_milp(inst).status, MilpStatus::kProvenInfeasible);
  EXPECT_EQ(check_feasible(inst), Feasibility::kInfeasible);
}

TEST(BranchAndBound, BranchingNeededAndBoundHolds) {
  // max 5a + 4b + 3c with 2a + 3b + c <= 5, 4a + b + 2c <= 11, 3a + 4b + 2c <= 8, integers in [0, 3].
  InstanceBuilder bld("ip", ObjectiveSense::kMaximize);
  const int a = bld.add_var(5, 0, 3, VarType::kInteger);
  const int b = bld.add_var(4, 0, 3, VarType::kInteger);
  const int c = bld.add_var(3, 0, 3, VarType::kInteger);
  bld.add_row({{a, 2}, {b, 3}, {c, 1}}, RowSense::kLessEqual, 5);
  bld.add_row({{a, 4}, {b, 1}, {c, 2}}, RowSense::kLessEqual, 11);
  bld.add_row({{a, 3}, {b, 4}, {c, 2}}, RowSense::kLessEqual, 8);
  const auto inst = std::move(bld).build();
  const auto sol = solve_milp(inst);
  ASSERT_EQ(sol.status, MilpStatus::kFeasible);
  // Exhaustive oracle over the 4^3 integer grid.
  double best = -1e9;
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j <= 3; ++j)
      for (int k = 0; k <= 3; ++k) {
        const std::vector<double> x{double(i), double(j), double(k)};
        if (is_feasible_point(inst, x)) best = std::max(best, objective_value(inst, x));
      }
  EXPECT_NEAR(*sol.obj, best, 1e-9);
  EXPECT_LE(*sol.obj, *sol.root_bound + 1e-6);
}

TEST(BranchAndBound, ZeroNodeBudgetIsUnknown) {
  const auto inst = gen::generate_instance(gen::make_spec("SC", gen::find_class("SC")->toy, 1));
  MilpLimits lim;
  lim.max_nodes = 0;
  EXPECT_EQ(check_feasible(inst, lim), Feasibility::kUnknown);
}

}  // namespace
}  // namespace milpret::lp
