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
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace milpret {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class ObjectiveSense { kMinimize, kMaximize };
enum class RowSense { kLessEqual, kGreaterEqual, kEqual };
enum class VarType { kBinary, kInteger, kImpliedInteger, kContinuous };

inline bool is_integral(VarType t) { return t != VarType::kContinuous; }

// A MILP in row-compressed form:
//
//   min/max  c^T x   s.t.  A_i x (<=|>=|=) b_i,  l <= x <= u,  x_j integral for j in I.
//
// Rows are stored CSR with strictly increasing column indices and no explicit
// zeros. Instances are immutable once built; use InstanceBuilder to create one.
struct MilpInstance {
  std::string name;
  ObjectiveSense objective_sense = ObjectiveSense::kMinimize;
  std::vector<double> c;
  std::vector<std::int64_t> row_start;  // size m + 1
  std::vector<std::int32_t> col_index;
  std::vector<double> value;
  std::vector<RowSense> senses;
  std::vector<double> b;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<VarType> integrality;
  // Optional; empty means auto-generated names (x{j}, c{i}).
  std::vector<std::string> var_names;
  std::vector<std::string> row_names;

  int num_vars() const { return static_cast<int>(c.size()); }
  int num_rows() const { return static_cast<int>(senses.size()); }
  std::int64_t nnz() const { return static_cast<std::int64_t>(value.size()); }

  std::span<const std::int32_t> row_cols(int i) const {
    return {col_index.data() + row_start[i],
            static_cast<std::size_t>(row_start[i + 1] - row_start[i])};
  }
  std::span<const double> row_vals(int i) const {
    return {value.data() + row_start[i],
            static_cast<std::size_t>(row_start[i + 1] - row_start[i])};
  }

  std::string var_name(int j) const;
  std::string row_name(int i) const;
};

// Throws Error(kInvalidInstance) naming the first violated invariant.
void validate(const MilpInstance& inst);

// Same dimensions, senses, integrality, bounds, objective and coefficients
// (exact comparison). Names are not compared.
bool structurally_equal(const MilpInstance& a, const MilpInstance& b);

// Row activities A x.
std::vector<double> row_activity(const MilpInstance& inst, std::span<const double> x);

// Checks constraints and bounds within `tol` and integrality within `int_tol`.
bool is_feasible_point(const MilpInstance& inst, std::span<const double> x,
                       double tol = 1e-7, double int_tol = 1e-6);

double objective_value(const MilpInstance& inst, std::span<const double> x);

// Column-major view of A, built on demand.
struct ColumnView {
  std::vector<std::int64_t> col_start;
  std::vector<std::int32_t> row_index;
  std::vector<double> value;
};
ColumnView column_view(const MilpInstance& inst);

class InstanceBuilder {
 public:
  explicit InstanceBuilder(std::string name,
                           ObjectiveSense sense = ObjectiveSense::kMinimize);

  int add_var(double obj, double lb, double ub, VarType type);
  int add_binary(double obj) { return add_var(obj, 0.0, 1.0, VarType::kBinary); }

  // Duplicate columns are summed; zero coefficients are dropped.
  int add_row(std::vector<std::pair<int, double>> terms, RowSense sense, double rhs);

  int num_vars() const { return static_cast<int>(inst_.c.size()); }
  int num_rows() const { return static_cast<int>(inst_.senses.size()); }

  // Validates and hands over the instance.
  MilpInstance build() &&;

 private:
  MilpInstance inst_;
};

}  // namespace milpret
