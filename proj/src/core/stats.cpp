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

#include "milpret/core/stats.hpp"

#include <cmath>

namespace milpret {

std::array<double, StructStats::kCount> StructStats::as_array() const {
  return {n_vars,           n_cons,          nnz_density,   frac_integer_vars,
          frac_binary_vars, mean_var_degree, mean_cons_degree, mean_abs_coef,
          std_abs_coef,     mean_rhs,        mean_obj_coef};
}

const std::array<std::string_view, StructStats::kCount>& StructStats::names() {
  static const std::array<std::string_view, kCount> kNames = {
      "n_vars",           "n_cons",          "nnz_density",   "frac_integer_vars",
      "frac_binary_vars", "mean_var_degree", "mean_cons_degree", "mean_abs_coef",
      "std_abs_coef",     "mean_rhs",        "mean_obj_coef"};
  return kNames;
}

StructStats instance_stats(const MilpInstance& inst) {
  const double n = inst.num_vars();
  const double m = inst.num_rows();
  const double nnz = static_cast<double>(inst.nnz());
  StructStats s;
  s.n_vars = n;
  s.n_cons = m;
  s.nnz_density = nnz / (m * n);
  int n_int = 0;
  int n_bin = 0;
  for (auto t : inst.integrality) {
    if (is_integral(t)) ++n_int;
    if (t == VarType::kBinary) ++n_bin;
  }
  s.frac_integer_vars = n_int / n;
  s.frac_binary_vars = n_bin / n;
  s.mean_var_degree = nnz / n;
  s.mean_cons_degree = nnz / m;
  double sum = 0.0;
  for (double v : inst.value) sum += std::abs(v);
  s.mean_abs_coef = sum / nnz;
  double sq = 0.0;
  for (double v : inst.value) {
    const double d = std::abs(v) - s.mean_abs_coef;
    sq += d * d;
  }
  s.std_abs_coef = std::sqrt(sq / nnz);
  double rhs = 0.0;
  for (double v : inst.b) rhs += v;
  s.mean_rhs = rhs / m;
  double obj = 0.0;
  for (double v : inst.c) obj += v;
  s.mean_obj_coef = obj / n;
  return s;
}

}  // namespace milpret
