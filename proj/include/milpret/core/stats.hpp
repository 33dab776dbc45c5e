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

#include <array>
#include <string_view>

#include "milpret/core/instance.hpp"

namespace milpret {

// Eleven structural descriptors of an instance. The fixed ordering below is
// the one used by the JS-divergence baseline and by every CSV export.
struct StructStats {
  double n_vars = 0;
  double n_cons = 0;
  double nnz_density = 0;       // nnz / (m * n)
  double frac_integer_vars = 0; // Binary, Integer and ImpliedInteger columns
  double frac_binary_vars = 0;
  double mean_var_degree = 0;   // nnz / n
  double mean_cons_degree = 0;  // nnz / m
  double mean_abs_coef = 0;
  double std_abs_coef = 0;      // population standard deviation
  double mean_rhs = 0;
  double mean_obj_coef = 0;

  static constexpr std::size_t kCount = 11;
  std::array<double, kCount> as_array() const;
  static const std::array<std::string_view, kCount>& names();
};

StructStats instance_stats(const MilpInstance& inst);

}  // namespace milpret
