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
#include <span>
#include <vector>

#include "milpret/core/instance.hpp"

namespace milpret::lp {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kLimitReached };
enum class BasisStatus { kAtLower, kBasic, kAtUpper, kZero };

struct LpLimits {
  std::int64_t max_iters = 1'000'000;
};

// LP relaxation result in the instance's own objective sense. Row duals are
// y = c_B B^-1 for the original objective, so for minimization an active <=
// row has y <= 0 and an active >= row has y >= 0.
struct LpSolution {
  LpStatus status = LpStatus::kLimitReached;
  std::vector<double> x;
  double obj = 0.0;
  std::vector<BasisStatus> basis;
  std::vector<double> y;
  std::vector<double> activity;
  std::int64_t iterations = 0;
};

// Bounded-variable primal simplex on a dense tableau.
//
// Every row i becomes A_i x + s_i = b_i with slack bounds [0, inf) for <=,
// (-inf, 0] for >= and [0, 0] for =. Rows whose slack cannot absorb the initial
// residual get an artificial column; phase 1 minimizes their sum. Pricing is
// Dantzig's rule, switching to Bland's smallest-index rule after a run of
// degenerate pivots. Each pivot costs O(m * (n + m)).
class DenseSimplex {
 public:
  explicit DenseSimplex(const MilpInstance& inst);

  // Cold solve from the slack/artificial basis with the current bounds.
  LpStatus solve(std::int64_t max_iters);

  // Replace structural bounds; the basis is kept.
  void set_bounds(std::span<const double> lower, std::span<const double> upper);

  // Warm re-solve after set_bounds: dual simplex when the current basis is
  // dual feasible, otherwise a cold solve.
  LpStatus resolve(std::int64_t max_iters);

  // Structural values, objective in the instance's sense, etc.
  LpSolution solution(LpStatus status) const;
  std::span<const double> x() const { return {x_.data(), static_cast<std::size_t>(n_)}; }
  double objective_min_sense() const;
  std::int64_t iterations() const { return iterations_; }
  bool phase_one_done() const { return phase_ == 2; }

 private:
  void reset();
  void recompute_basic_values();
  void recompute_reduced_costs();
  void recompute_column_norms();
  void pivot(int row, int col);
  LpStatus primal(std::int64_t max_iters);
  LpStatus dual(std::int64_t max_iters);
  LpStatus polish(LpStatus st, std::int64_t max_iters);
  bool is_fixed(int j) const { return lower_[j] == upper_[j]; }
  double* row(int i) { return tableau_.data() + static_cast<std::size_t>(i) * stride_; }
  const double* row(int i) const {
    return tableau_.data() + static_cast<std::size_t>(i) * stride_;
  }

  const MilpInstance& inst_;
  int n_ = 0;       // structural columns
  int m_ = 0;       // rows
  int cols_ = 0;    // structural + slack + artificial
  std::size_t stride_ = 0;  // cols_ + 1 (rhs column last)
  double sign_ = 1.0;       // +1 minimize, -1 maximize (internal costs are sign * c)
  std::vector<double> struct_lower_;
  std::vector<double> struct_upper_;

  std::vector<double> tableau_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> cost_;
  std::vector<double> x_;
  std::vector<double> d_;
  std::vector<double> norm2_;  // steepest-edge weights 1 + ||B^-1 a_j||^2
  std::vector<int> basic_;    // row -> column
  std::vector<int> row_of_;   // column -> row or -1
  std::vector<double> art_sign_;
  int phase_ = 1;
  std::int64_t iterations_ = 0;
};

LpSolution solve_lp_relaxation(const MilpInstance& inst, const LpLimits& limits = {});

}  // namespace milpret::lp
