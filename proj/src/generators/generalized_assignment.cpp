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

// Generalized assignment.
// Sampling: costs c_ij ~ U{10..50}, resource use r_ij ~ U{5..25}. A reference
// assignment sends each job to a uniformly drawn agent; capacity
// b_i = max(ceil(tightness * sum_j r_ij / n_agents), load of agent i in the
// reference assignment), so the instance is always feasible.
// Model: min sum c_ij x_ij, sum_i x_ij = 1 per job, sum_j r_ij x_ij <= b_i per
// agent, x binary with index i*n_jobs + j.
#include <algorithm>
#include <cmath>

#include "milpret/generators/registry.hpp"

namespace milpret::gen {
namespace {

MilpInstance generate(const Params& p, Rng& rng) {
  const int n_agents = iparam(p, "n_agents");
  const int n_jobs = iparam(p, "n_jobs");
  const double tight = p.at("tightness");
  std::vector<double> cost(n_agents * n_jobs), res(n_agents * n_jobs);
  for (auto& v : cost) v = static_cast<double>(rng.uniform_int(10, 50));
  for (auto& v : res) v = static_cast<double>(rng.uniform_int(5, 25));
  std::vector<double> load(n_agents, 0.0);
  for (int j = 0; j < n_jobs; ++j) {
    const int i = static_cast<int>(rng.below(n_agents));
    load[i] += res[i * n_jobs + j];
  }
  InstanceBuilder b("GeneralizedAssignment", ObjectiveSense::kMinimize);
  for (double c : cost) b.add_binary(c);
  for (int j = 0; j < n_jobs; ++j) {
    std::vector<std::pair<int, double>> terms;
    for (int i = 0; i < n_agents; ++i) terms.emplace_back(i * n_jobs + j, 1.0);
    b.add_row(std::move(terms), RowSense::kEqual, 1.0);
  }
  for (int i = 0; i < n_agents; ++i) {
    double sum = 0.0;
    std::vector<std::pair<int, double>> terms;
    for (int j = 0; j < n_jobs; ++j) {
      terms.emplace_back(i * n_jobs + j, res[i * n_jobs + j]);
      sum += res[i * n_jobs + j];
    }
    const double cap = std::max(std::ceil(tight * sum / n_agents), load[i]);
    b.add_row(std::move(terms), RowSense::kLessEqual, cap);
  }
  return std::move(b).build();
}

std::string describe_params(const Params& p) {
  return "The MPS file, named 'GeneralizedAssignment', describes a generalized assignment "
         "problem in which " + format_param(p.at("n_jobs")) + " jobs must be assigned to " +
         format_param(p.at("n_agents")) + " agents with limited resources. The objective is to "
         "minimize the total assignment cost. Equality constraints assign every job to exactly "
         "one agent, capacity inequalities with tightness " + format_param(p.at("tightness")) +
         " limit the resources each agent consumes, and binary variables represent the "
         "job to agent assignments.";
}

}  // namespace

ClassDef make_generalized_assignment_class() {
  ClassDef c;
  c.id = "GA";
  c.full_name = "Generalized Assignment";
  c.schema = {{"n_agents", true, 1, 1e4, true},
              {"n_jobs", true, 1, 1e5, true},
              {"tightness", false, 0.1, 10.0, false}};
  c.defaults = {{"n_agents", 10}, {"n_jobs", 50}, {"tightness", 0.8}};
  c.toy = {{"n_agents", 5}, {"n_jobs", 25}, {"tightness", 0.8}};
  c.size_exponent = 2.0;
  c.generate = generate;
  c.describe = describe_params;
  return c;
}

}  // namespace milpret::gen
