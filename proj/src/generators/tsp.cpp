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

// Asymmetric-form TSP with Miller-Tucker-Zemlin subtour elimination.
// Sampling: cities uniform in [0, 100]^2, d_ij = round(euclidean distance).
// Model (x_ij binary for i != j, u_i continuous in [1, n-1] for i >= 1):
//   min sum d_ij x_ij
//   sum_j x_ij = 1, sum_j x_ji = 1      per city
//   u_i - u_j + (n-1) x_ij <= n-2        for i, j >= 1, i != j
// Variables: x_ij in row-major order skipping the diagonal, then u_1..u_{n-1}.
#include <cmath>

#include "milpret/generators/registry.hpp"

namespace milpret::gen {
namespace {

MilpInstance generate(const Params& p, Rng& rng) {
  const int n = iparam(p, "n_cities");
  std::vector<double> px(n), py(n);
  for (int i = 0; i < n; ++i) {
    px[i] = rng.uniform(0.0, 100.0);
    py[i] = rng.uniform(0.0, 100.0);
  }
  InstanceBuilder b("TravelingSalesman", ObjectiveSense::kMinimize);
  std::vector<int> xid(n * n, -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      xid[i * n + j] = b.add_binary(std::round(std::hypot(px[i] - px[j], py[i] - py[j])));
    }
  }
  std::vector<int> uid(n, -1);
  for (int i = 1; i < n; ++i) uid[i] = b.add_var(0.0, 1.0, n - 1.0, VarType::kContinuous);
  for (int i = 0; i < n; ++i) {
    std::vector<std::pair<int, double>> out, in;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      out.emplace_back(xid[i * n + j], 1.0);
      in.emplace_back(xid[j * n + i], 1.0);
    }
    b.add_row(std::move(out), RowSense::kEqual, 1.0);
    b.add_row(std::move(in), RowSense::kEqual, 1.0);
  }
  for (int i = 1; i < n; ++i) {
    for (int j = 1; j < n; ++j) {
      if (i == j) continue;
      b.add_row({{uid[i], 1.0}, {uid[j], -1.0}, {xid[i * n + j], n - 1.0}}, RowSense::kLessEqual,
                n - 2.0);
    }
  }
  return std::move(b).build();
}

std::string describe_params(const Params& p) {
  return "The MPS file, named 'TravelingSalesman', encodes a traveling salesman problem over " +
         format_param(p.at("n_cities")) + " cities placed at random in the plane. The objective "
         "is to minimize the total length of a tour that visits every city exactly once. "
         "Assignment equalities give each city one outgoing and one incoming arc, binary "
         "variables select the arcs, and Miller Tucker Zemlin inequalities on continuous "
         "ordering variables eliminate subtours.";
}

}  // namespace

ClassDef make_tsp_class() {
  ClassDef c;
  c.id = "TSP";
  c.full_name = "Traveling Salesman Problem";
  c.schema = {{"n_cities", true, 3, 2000, true}};
  c.defaults = {{"n_cities", 15}};
  c.toy = {{"n_cities", 10}};
  c.size_exponent = 2.0;
  c.generate = generate;
  c.describe = describe_params;
  return c;
}

}  // namespace milpret::gen
