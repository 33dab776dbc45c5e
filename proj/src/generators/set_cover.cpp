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

// Set Cover, following the reference generator line by line:
//   nnzrs = int(n_rows * n_cols * density)
//   column of every nonzero drawn uniformly, then the first 2*n_cols entries
//   overwritten with 0,0,1,1,... so each column has >= 2 nonzeros;
//   the first n_rows row slots take a random permutation so each row has >= 1;
//   columns past the permutation draw distinct rows uniformly, and the column
//   straddling the boundary completes itself from the rows it does not hold.
// Objective coefficients are uniform integers in [1, max_coef], minimized,
// with cover rows sum_j x_j >= 1.
#include <algorithm>
#include <cstdint>

#include "milpret/core/error.hpp"
#include "milpret/generators/registry.hpp"

namespace milpret::gen {
namespace {

std::int64_t nonzero_count(const Params& p) {
  return static_cast<std::int64_t>(p.at("n_rows") * p.at("n_cols") * p.at("density"));
}

void check(const Params& p) {
  const auto nnz = nonzero_count(p);
  if (nnz < 2 * static_cast<std::int64_t>(p.at("n_cols"))) {
    fail(ErrorKind::kInvalidParams,
         "SC: int(n_rows*n_cols*density) must be >= 2*n_cols (density*n_rows >= 2)");
  }
  if (nnz < static_cast<std::int64_t>(p.at("n_rows"))) {
    fail(ErrorKind::kInvalidParams, "SC: int(n_rows*n_cols*density) must be >= n_rows");
  }
}

MilpInstance generate(const Params& p, Rng& rng) {
  const int n_rows = iparam(p, "n_rows");
  const int n_cols = iparam(p, "n_cols");
  const int max_coef = iparam(p, "max_coef");
  const auto nnzrs = nonzero_count(p);

  std::vector<int> indices(nnzrs);
  for (auto& v : indices) v = static_cast<int>(rng.below(n_cols));
  for (int j = 0; j < n_cols; ++j) {
    indices[2 * j] = j;
    indices[2 * j + 1] = j;
  }
  std::vector<std::int64_t> col_nrows(n_cols, 0);
  for (int v : indices) ++col_nrows[v];

  const auto perm = rng.permutation(n_rows);
  std::copy(perm.begin(), perm.end(), indices.begin());
  std::int64_t i = 0;
  std::vector<std::int64_t> indptr{0};
  for (const auto n : col_nrows) {
    if (n > n_rows) fail(ErrorKind::kInvalidParams, "SC: a column needs more rows than exist");
    if (i >= n_rows) {
      const auto rows = rng.sample(n_rows, static_cast<int>(n));
      std::copy(rows.begin(), rows.end(), indices.begin() + i);
    } else if (i + n > n_rows) {
      std::vector<char> taken(n_rows, 0);
      for (std::int64_t k = i; k < n_rows; ++k) taken[indices[k]] = 1;
      std::vector<int> remaining;
      for (int r = 0; r < n_rows; ++r) {
        if (!taken[r]) remaining.push_back(r);
      }
      const auto pick = rng.sample(static_cast<int>(remaining.size()), static_cast<int>(i + n - n_rows));
      for (std::size_t k = 0; k < pick.size(); ++k) indices[n_rows + k] = remaining[pick[k]];
    }
    i += n;
    indptr.push_back(i);
  }

  InstanceBuilder b("SetCover", ObjectiveSense::kMinimize);
  for (int j = 0; j < n_cols; ++j) {
    b.add_binary(static_cast<double>(rng.below(max_coef) + 1));
  }
  std::vector<std::vector<std::pair<int, double>>> rows(n_rows);
  for (int j = 0; j < n_cols; ++j) {
    for (auto k = indptr[j]; k < indptr[j + 1]; ++k) rows[indices[k]].emplace_back(j, 1.0);
  }
  for (auto& terms : rows) b.add_row(std::move(terms), RowSense::kGreaterEqual, 1.0);
  return std::move(b).build();
}

std::string describe_params(const Params& p) {
  return "The MPS file, named 'SetCover', represents a mixed integer programming problem "
         "focused on a set cover optimization task. Its objective is to minimize the total "
         "cost of the selected columns, where each column carries an integer cost between 1 "
         "and " + format_param(p.at("max_coef")) + ". The formulation uses inequalities so that "
         "each of the " + format_param(p.at("n_rows")) + " constraints guarantees that its row "
         "is covered by at least one selected column. The " + format_param(p.at("n_cols")) +
         " decision variables are binary, reflecting the choice of each column's inclusion in "
         "the cover, and the coverage matrix has density " + format_param(p.at("density")) + ".";
}

}  // namespace

ClassDef make_set_cover_class() {
  ClassDef c;
  c.id = "SC";
  c.full_name = "Set Cover";
  c.schema = {{"density", false, 1e-6, 1.0, false},
              {"max_coef", true, 1, 1e9, false},
              {"n_cols", true, 1, 1e7, true},
              {"n_rows", true, 1, 1e7, true}};
  c.defaults = {{"n_rows", 750}, {"n_cols", 1500}, {"density", 0.05}, {"max_coef", 100}};
  c.toy = {{"n_rows", 100}, {"n_cols", 200}, {"density", 0.05}, {"max_coef", 100}};
  c.size_exponent = 1.0;
  c.check = check;
  c.generate = generate;
  c.describe = describe_params;
  return c;
}

}  // namespace milpret::gen
