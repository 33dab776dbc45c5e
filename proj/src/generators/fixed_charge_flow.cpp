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

// Fixed-charge network flow on a random DAG.
// Sampling: nodes 0..N-1; chain arcs (k, k+1) always present, every other pair
// u < v kept with probability arc_prob. Node 0 supplies S = sum of demands,
// each node k >= 1 demands U{0..20} (node N-1 demands at least 1). Chain arcs
// have capacity S, other arcs round(U[0.2, 1] * S). Unit costs U{1..10},
// fixed costs U{20..100}.
// Model (f_a continuous in [0, u_a], y_a binary, big-M = u_a):
//   min sum c_a f_a + F_a y_a
//   out(k) - in(k) = supply_k           per node
//   f_a - u_a y_a <= 0                   per arc
// Variables: f_0..f_{A-1} then y_0..y_{A-1}.
#include <algorithm>
#include <cmath>

#include "milpret/generators/registry.hpp"

namespace milpret::gen {
namespace {

MilpInstance generate(const Params& p, Rng& rng) {
  const int n = iparam(p, "n_nodes");
  const double prob = p.at("arc_prob");
  std::vector<std::pair<int, int>> arcs;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (v == u + 1 || rng.uniform() < prob) arcs.emplace_back(u, v);
    }
  }
  std::vector<double> supply(n, 0.0);
  double total = 0.0;
  for (int k = 1; k < n; ++k) {
    double d = static_cast<double>(rng.uniform_int(0, 20));
    if (k == n - 1) d = std::max(d, 1.0);
    supply[k] = -d;
    total += d;
  }
  supply[0] = total;
  const int a_count = static_cast<int>(arcs.size());
  std::vector<double> cap(a_count), unit(a_count), fixed(a_count);
  for (int a = 0; a < a_count; ++a) {
    const bool chain = arcs[a].second == arcs[a].first + 1;
    cap[a] = chain ? total : std::round(rng.uniform(0.2, 1.0) * total);
    unit[a] = static_cast<double>(rng.uniform_int(1, 10));
    fixed[a] = static_cast<double>(rng.uniform_int(20, 100));
  }
  InstanceBuilder b("FixedChargeNetworkFlow", ObjectiveSense::kMinimize);
  for (int a = 0; a < a_count; ++a) b.add_var(unit[a], 0.0, cap[a], VarType::kContinuous);
  for (int a = 0; a < a_count; ++a) b.add_binary(fixed[a]);
  std::vector<std::vector<std::pair<int, double>>> balance(n);
  for (int a = 0; a < a_count; ++a) {
    balance[arcs[a].first].emplace_back(a, 1.0);
    balance[arcs[a].second].emplace_back(a, -1.0);
  }
  for (int k = 0; k < n; ++k) b.add_row(std::move(balance[k]), RowSense::kEqual, supply[k]);
  for (int a = 0; a < a_count; ++a) {
    b.add_row({{a, 1.0}, {a_count + a, -cap[a]}}, RowSense::kLessEqual, 0.0);
  }
  return std::move(b).build();
}

std::string describe_params(const Params& p) {
  return "The MPS file, named 'FixedChargeNetworkFlow', represents a fixed charge network "
         "flow problem on a directed acyclic network with " + format_param(p.at("n_nodes")) +
         " nodes and an extra arc between node pairs with probability " +
         format_param(p.at("arc_prob")) + ". The objective is to minimize variable shipping "
         "costs plus fixed charges for every arc that carries flow. Flow conservation "
         "equalities route the supply of the source to the demand nodes, and big-M "
         "inequalities allow flow on an arc only when its binary activation variable is set, "
         "while continuous variables carry the arc flows.";
}

}  // namespace

ClassDef make_fixed_charge_flow_class() {
  ClassDef c;
  c.id = "FCNF";
  c.full_name = "Fixed-Charge Network Flow";
  c.schema = {{"arc_prob", false, 0.0, 1.0, false}, {"n_nodes", true, 2, 1e5, true}};
  c.defaults = {{"n_nodes", 40}, {"arc_prob", 0.15}};
  c.toy = {{"n_nodes", 20}, {"arc_prob", 0.2}};
  c.size_exponent = 2.0;
  c.generate = generate;
  c.describe = describe_params;
  return c;
}

}  // namespace milpret::gen
