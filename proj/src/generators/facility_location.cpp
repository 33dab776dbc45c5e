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

// Capacitated facility location (Cornuejols-style sampling).
// Customers and facilities get uniform points in the unit square; demands
// d_i ~ U[5, 35], raw capacities s_j ~ U[10, 160] rescaled so that
// sum s = ratio * sum d; fixed costs f_j = U[100, 110] * sqrt(s_j) + U[0, 90];
// unit transport cost c_ij = 10 * distance(i, j) * d_i.
// Model (x_ij continuous in [0,1] is the served fraction, y_j binary):
//   min sum f_j y_j + sum c_ij x_ij
//   sum_j x_ij = 1                     per customer
//   sum_i d_i x_ij - s_j y_j <= 0      per facility
//   x_ij - y_j <= 0                    per pair
//   sum_j s_j y_j >= sum_i d_i
// Variables: y_0..y_{F-1} first, then x_ij at F + i*F + j.
#include <cmath>

#include "milpret/generators/registry.hpp"

namespace milpret::gen {
namespace {

MilpInstance generate(const Params& p, Rng& rng) {
  const int n_cust = iparam(p, "n_customers");
  const int n_fac = iparam(p, "n_facilities");
  const double ratio = p.at("ratio");
  std::vector<double> cx(n_cust), cy(n_cust), fx(n_fac), fy(n_fac);
  for (int i = 0; i < n_cust; ++i) {
    cx[i] = rng.uniform();
    cy[i] = rng.uniform();
  }
  for (int j = 0; j < n_fac; ++j) {
    fx[j] = rng.uniform();
    fy[j] = rng.uniform();
  }
  std::vector<double> demand(n_cust), cap(n_fac), fixed(n_fac);
  double total_demand = 0.0;
  for (auto& d : demand) {
    d = static_cast<double>(rng.uniform_int(5, 35));
    total_demand += d;
  }
  double total_cap = 0.0;
  for (auto& s : cap) {
    s = static_cast<double>(rng.uniform_int(10, 160));
    total_cap += s;
  }
  for (auto& s : cap) s = std::round(s * ratio * total_demand / total_cap);
  for (int j = 0; j < n_fac; ++j) {
    fixed[j] = std::round(rng.uniform(100.0, 110.0) * std::sqrt(cap[j]) + rng.uniform(0.0, 90.0));
  }

  InstanceBuilder b("CapacitatedFacilityLocation", ObjectiveSense::kMinimize);
  for (int j = 0; j < n_fac; ++j) b.add_binary(fixed[j]);
  const auto x = [&](int i, int j) { return n_fac + i * n_fac + j; };
  for (int i = 0; i < n_cust; ++i) {
    for (int j = 0; j < n_fac; ++j) {
      const double dist = std::hypot(cx[i] - fx[j], cy[i] - fy[j]);
      b.add_var(std::round(10.0 * dist * demand[i] * 100.0) / 100.0, 0.0, 1.0,
                VarType::kContinuous);
    }
  }
  for (int i = 0; i < n_cust; ++i) {
    std::vector<std::pair<int, double>> terms;
    for (int j = 0; j < n_fac; ++j) terms.emplace_back(x(i, j), 1.0);
    b.add_row(std::move(terms), RowSense::kEqual, 1.0);
  }
  for (int j = 0; j < n_fac; ++j) {
    std::vector<std::pair<int, double>> terms;
    for (int i = 0; i < n_cust; ++i) terms.emplace_back(x(i, j), demand[i]);
    terms.emplace_back(j, -cap[j]);
    b.add_row(std::move(terms), RowSense::kLessEqual, 0.0);
  }
  for (int i = 0; i < n_cust; ++i) {
    for (int j = 0; j < n_fac; ++j) {
      b.add_row({{x(i, j), 1.0}, {j, -1.0}}, RowSense::kLessEqual, 0.0);
    }
  }
  std::vector<std::pair<int, double>> terms;
  for (int j = 0; j < n_fac; ++j) terms.emplace_back(j, cap[j]);
  b.add_row(std::move(terms), RowSense::kGreaterEqual, total_demand);
  return std::move(b).build();
}

std::string describe_params(const Params& p) {
  return "The MPS file, named 'CapacitatedFacilityLocation', formulates a capacitated "
         "facility location problem with " + format_param(p.at("n_customers")) + " customers and " +
         format_param(p.at("n_facilities")) + " candidate facilities whose total capacity is "
         "about " + format_param(p.at("ratio")) + " times the total demand. The objective is to "
         "minimize the fixed opening costs plus the transportation costs of serving demand. "
         "Equality constraints require every customer to be fully served, capacity "
         "inequalities link served demand to open facilities, and binary variables decide "
         "which facilities open while continuous variables give the served fractions.";
}

}  // namespace

ClassDef make_facility_location_class() {
  ClassDef c;
  c.id = "CFL";
  c.full_name = "Capacitated Facility Location";
  c.schema = {{"n_customers", true, 1, 1e5, true},
              {"n_facilities", true, 1, 1e4, true},
              {"ratio", false, 1.0, 100.0, false}};
  c.defaults = {{"n_customers", 50}, {"n_facilities", 20}, {"ratio", 5.0}};
  c.toy = {{"n_customers", 25}, {"n_facilities", 8}, {"ratio", 3.0}};
  c.size_exponent = 2.0;
  c.generate = generate;
  c.describe = describe_params;
  return c;
}

}  // namespace milpret::gen
