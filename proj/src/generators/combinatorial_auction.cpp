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

// Combinatorial auction winner determination.
// Sampling: item values uniform in [1, 100]; each bid draws a bundle size
// uniformly in [min_bundle, max_bundle] and that many distinct items; its price
// is round(sum of item values * U[1, 1.5]). Items left in no bundle are appended
// to a uniformly chosen bid. Model: max sum price_b x_b, one packing row per
// item (sum of bids containing it <= 1), x binary.
#include <algorithm>
#include <cmath>

#include "milpret/core/error.hpp"
#include "milpret/generators/registry.hpp"

namespace milpret::gen {
namespace {

void check(const Params& p) {
  if (p.at("min_bundle") > p.at("max_bundle")) {
    fail(ErrorKind::kInvalidParams, "CA: min_bundle exceeds max_bundle");
  }
  if (p.at("max_bundle") > p.at("n_items")) {
    fail(ErrorKind::kInvalidParams, "CA: max_bundle exceeds n_items");
  }
}

MilpInstance generate(const Params& p, Rng& rng) {
  const int n_items = iparam(p, "n_items");
  const int n_bids = iparam(p, "n_bids");
  const int lo = iparam(p, "min_bundle");
  const int hi = iparam(p, "max_bundle");
  std::vector<double> item_value(n_items);
  for (auto& v : item_value) v = rng.uniform(1.0, 100.0);
  std::vector<std::vector<int>> bundles(n_bids);
  std::vector<char> covered(n_items, 0);
  for (auto& bundle : bundles) {
    const int size = static_cast<int>(rng.uniform_int(lo, hi));
    bundle = rng.sample(n_items, size);
    for (int item : bundle) covered[item] = 1;
  }
  for (int item = 0; item < n_items; ++item) {
    if (!covered[item]) bundles[rng.below(n_bids)].push_back(item);
  }
  InstanceBuilder b("CombinatorialAuction", ObjectiveSense::kMaximize);
  std::vector<std::vector<std::pair<int, double>>> rows(n_items);
  for (int bid = 0; bid < n_bids; ++bid) {
    double total = 0.0;
    for (int item : bundles[bid]) total += item_value[item];
    b.add_binary(std::round(total * rng.uniform(1.0, 1.5)));
    for (int item : bundles[bid]) rows[item].emplace_back(bid, 1.0);
  }
  for (auto& terms : rows) b.add_row(std::move(terms), RowSense::kLessEqual, 1.0);
  return std::move(b).build();
}

std::string describe_params(const Params& p) {
  return "The MPS file, named 'CombinatorialAuction', models the winner determination "
         "problem of a combinatorial auction with " + format_param(p.at("n_items")) + " items and " +
         format_param(p.at("n_bids")) + " bids. Each bid requests a bundle of between " +
         format_param(p.at("min_bundle")) + " and " + format_param(p.at("max_bundle")) +
         " items and offers a price for the whole bundle. The objective is to maximize the "
         "revenue of the accepted bids, and one packing inequality per item ensures that no "
         "item is sold more than once. Binary variables decide whether each bid is accepted.";
}

}  // namespace

ClassDef make_combinatorial_auction_class() {
  ClassDef c;
  c.id = "CA";
  c.full_name = "Combinatorial Auction";
  c.schema = {{"max_bundle", true, 1, 1e6, false},
              {"min_bundle", true, 1, 1e6, false},
              {"n_bids", true, 1, 1e6, true},
              {"n_items", true, 1, 1e6, true}};
  c.defaults = {{"n_items", 100}, {"n_bids", 500}, {"min_bundle", 2}, {"max_bundle", 6}};
  c.toy = {{"n_items", 40}, {"n_bids", 100}, {"min_bundle", 2}, {"max_bundle", 5}};
  c.size_exponent = 1.0;
  c.check = check;
  c.generate = generate;
  c.describe = describe_params;
  return c;
}

}  // namespace milpret::gen
