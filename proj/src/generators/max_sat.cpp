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

// Weighted Max-SAT (optional extra class).
// Sampling: every clause draws clause_len distinct variables, each negated with
// probability 1/2, and a weight U{1..10}.
// Model (x_v binary truth values, z_c binary clause indicators):
//   max sum w_c z_c
//   z_c - sum_{v in pos(c)} x_v + sum_{v in neg(c)} x_v <= |neg(c)|
// Variables: x_0..x_{n-1} then z_0..z_{m-1}.
#include "milpret/core/error.hpp"
#include "milpret/generators/registry.hpp"

namespace milpret::gen {
namespace {

void check(const Params& p) {
  if (p.at("clause_len") > p.at("n_vars")) {
    fail(ErrorKind::kInvalidParams, "SAT: clause_len exceeds n_vars");
  }
}

MilpInstance generate(const Params& p, Rng& rng) {
  const int n = iparam(p, "n_vars");
  const int m = iparam(p, "n_clauses");
  const int len = iparam(p, "clause_len");
  InstanceBuilder b("MaxSatisfiability", ObjectiveSense::kMaximize);
  for (int v = 0; v < n; ++v) b.add_binary(0.0);
  std::vector<std::vector<std::pair<int, double>>> rows(m);
  std::vector<double> rhs(m, 0.0);
  for (int c = 0; c < m; ++c) {
    const auto vars = rng.sample(n, len);
    for (int v : vars) {
      const bool negated = rng.bernoulli(0.5);
      rows[c].emplace_back(v, negated ? 1.0 : -1.0);
      if (negated) rhs[c] += 1.0;
    }
    const int z = b.add_binary(static_cast<double>(rng.uniform_int(1, 10)));
    rows[c].emplace_back(z, 1.0);
  }
  for (int c = 0; c < m; ++c) b.add_row(std::move(rows[c]), RowSense::kLessEqual, rhs[c]);
  return std::move(b).build();
}

std::string describe_params(const Params& p) {
  return "The MPS file, named 'MaxSatisfiability', encodes a weighted maximum satisfiability "
         "problem with " + format_param(p.at("n_vars")) + " boolean variables and " +
         format_param(p.at("n_clauses")) + " clauses of " + format_param(p.at("clause_len")) +
         " literals each. The objective is to maximize the total weight of satisfied clauses. "
         "Each clause becomes an inequality that lets its binary indicator be set only when "
         "at least one literal is true, with binary variables for truth values and clause "
         "satisfaction.";
}

}  // namespace

ClassDef make_max_sat_class() {
  ClassDef c;
  c.id = "SAT";
  c.full_name = "Max Satisfiability";
  c.schema = {{"clause_len", true, 1, 100, false},
              {"n_clauses", true, 1, 1e6, true},
              {"n_vars", true, 1, 1e6, true}};
  c.defaults = {{"n_vars", 100}, {"n_clauses", 400}, {"clause_len", 3}};
  c.toy = {{"n_vars", 50}, {"n_clauses", 150}, {"clause_len", 3}};
  c.size_exponent = 1.0;
  c.check = check;
  c.generate = generate;
  c.describe = describe_params;
  return c;
}

}  // namespace milpret::gen
