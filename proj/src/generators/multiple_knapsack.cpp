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

// Multiple knapsack with uncorrelated weights and profits.
// Sampling: weights and profits uniform integers in [10, max_weight]; capacity
// of knapsack k is max(max weight, floor(U[0.4, 0.6] * total weight / K)).
// Model: max sum_ik p_i x_ik, sum_i w_i x_ik <= C_k per knapsack,
// sum_k x_ik <= 1 per item, x binary. Variable x_ik has index i*K + k.
#include <algorithm>
#include <cmath>

#include "milpret/core/error.hpp"
#include "milpret/generators/registry.hpp"

namespace milpret::gen {
namespace {

MilpInstance generate(const Params& p, Rng& rng) {
  const int n = iparam(p, "n_items");
  const int k_count = iparam(p, "n_knapsacks");
  const int max_w = iparam(p, "max_weight");
  std::vector<double> weight(n), profit(n);
  for (int i = 0; i < n; ++i) {
    weight[i] = static_cast<double>(rng.uniform_int(10, max_w));
    profit[i] = static_cast<double>(rng.uniform_int(10, max_w));
  }
  double total = 0.0;
  for (double w : weight) total += w;
  const double heaviest = *std::max_element(weight.begin(), weight.end());
  std::vector<double> capacity(k_count);
  for (auto& cap : capacity) {
    cap = std::max(heaviest, std::floor(rng.uniform(0.4, 0.6) * total / k_count));
  }
  InstanceBuilder b("MultipleKnapsack", ObjectiveSense::kMaximize);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < k_count; ++k) b.add_binary(profit[i]);
  }
  for (int k = 0; k < k_count; ++k) {
    std::vector<std::pair<int, double>> terms;
    for (int i = 0; i < n; ++i) terms.emplace_back(i * k_count + k, weight[i]);
    b.add_row(std::move(terms), RowSense::kLessEqual, capacity[k]);
  }
  for (int i = 0; i < n; ++i) {
    std::vector<std::pair<int, double>> terms;
    for (int k = 0; k < k_count; ++k) terms.emplace_back(i * k_count + k, 1.0);
    b.add_row(std::move(terms), RowSense::kLessEqual, 1.0);
  }
  return std::move(b).build();
}

std::string describe_params(const Params& p) {
  return "The MPS file, named 'MultipleKnapsack', describes a multiple knapsack problem in "
         "which " + format_param(p.at("n_items")) + " items with integer weights and profits up "
         "to " + format_param(p.at("max_weight")) + " are packed into " +
         format_param(p.at("n_knapsacks")) + " knapsacks of limited capacity. The objective is "
         "to maximize the total profit of the packed items. Capacity inequalities bound the "
         "weight placed in every knapsack and assignment inequalities allow each item to enter "
         "at most one knapsack, with binary variables for every item and knapsack pair.";
}

}  // namespace

ClassDef make_multiple_knapsack_class() {
  ClassDef c;
  c.id = "KS";
  c.full_name = "Multiple Knapsack";
  c.schema = {{"max_weight", true, 10, 1e9, false},
              {"n_items", true, 1, 1e6, true},
              {"n_knapsacks", true, 1, 1e4, true}};
  c.defaults = {{"n_items", 50}, {"n_knapsacks", 5}, {"max_weight", 100}};
  c.toy = {{"n_items", 30}, {"n_knapsacks", 4}, {"max_weight", 100}};
  c.size_exponent = 2.0;
  c.generate = generate;
  c.describe = describe_params;
  return c;
}

}  // namespace milpret::gen
