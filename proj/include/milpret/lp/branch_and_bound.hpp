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
#include <optional>
#include <vector>

#include "milpret/core/instance.hpp"

namespace milpret::lp {

enum class MilpStatus { kFeasible, kProvenInfeasible, kLimitReached };
enum class Feasibility { kFeasible, kInfeasible, kUnknown };

struct MilpLimits {
  std::int64_t max_nodes = 50'000;
  double max_seconds = 50.0;
  // Stop as soon as any incumbent exists (feasibility checks only).
  bool stop_at_first_incumbent = false;
  std::int64_t max_lp_iters_per_node = 1'000'000;
};

// kFeasible means the search finished: x_int is optimal. kLimitReached may
// still carry an incumbent.
struct MilpSolution {
  MilpStatus status = MilpStatus::kLimitReached;
  std::optional<std::vector<double>> x_int;
  std::optional<double> obj;
  std::int64_t nodes_explored = 0;
  // Root LP bound in the instance's objective sense, when the root solved.
  std::optional<double> root_bound;
};

// Depth-first branch-and-bound: branch on the most fractional integral column
// (ties to the lowest index), dive into the child on the rounding side first,
// prune by the LP bound, and try nearest/up/down rounding of every node LP.
// Node LPs are warm-started with the dual simplex. A node LP that is unbounded
// stops the search with kLimitReached.
MilpSolution solve_milp(const MilpInstance& inst, const MilpLimits& limits = {});

// kFeasible iff an incumbent was found, kInfeasible iff the search proved
// there is none, kUnknown otherwise. Stops at the first incumbent.
Feasibility check_feasible(const MilpInstance& inst, MilpLimits limits = {});

}  // namespace milpret::lp
