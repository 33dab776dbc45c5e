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

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "milpret/core/instance.hpp"
#include "milpret/generators/rng.hpp"

namespace milpret::gen {

// Ordered parameter map; integers are stored as exact doubles.
using Params = std::map<std::string, double>;

struct ParamSchema {
  std::string name;
  bool integer = false;
  double min = 0.0;  // inclusive
  double max = 0.0;  // inclusive
  bool size = false; // scaled by scale_params / jitter_params
};

// The native stand-in for a generator "code" snippet: executing it means
// calling generate_instance.
struct GeneratorSpec {
  std::string class_id;
  Params params;
  std::uint64_t seed = 0;
  std::string description;
};

struct ClassDef {
  std::string id;
  std::string full_name;
  std::vector<ParamSchema> schema;
  Params defaults;
  // Desk-scale preset used for training corpora and tests.
  Params toy;
  // Approximate exponent e with n_vars ~ factor^e when all size params are
  // multiplied by factor; used to turn a variable-count ratio into a factor.
  double size_exponent = 1.0;
  std::function<void(const Params&)> check;  // class-specific constraints
  std::function<MilpInstance(const Params&, Rng&)> generate;
  std::function<std::string(const Params&)> describe;
};

struct ClassSummary {
  std::string id;
  std::string full_name;
  std::vector<ParamSchema> schema;
  Params defaults;
};

// Registered classes in a fixed order: SC, IS, CA, KS, CFL, FCNF, TSP, GA, SAT.
std::vector<ClassSummary> list_classes();
const ClassDef* find_class(std::string_view id);
std::optional<std::vector<ParamSchema>> schema_of(std::string_view id);
std::vector<std::string> class_ids();

// Throws kUnknownClass / kInvalidParams.
const ClassDef& require_class(std::string_view id);
void validate_params(std::string_view id, const Params& params);

// Fills any missing parameter from the class defaults.
Params with_defaults(std::string_view id, Params overrides);

GeneratorSpec make_spec(std::string_view id, Params params, std::uint64_t seed);
std::string describe(std::string_view id, const Params& params);

MilpInstance generate_instance(const GeneratorSpec& spec);

// Size params multiplied by factor and rounded; others unchanged.
Params scale_params(std::string_view id, const Params& params, double factor);

// Every size param and every continuous non-size param is multiplied by its
// own factor ~ U[lo, hi] (seeded). If the result violates a class constraint,
// all factors are pulled towards 1 until it passes.
Params jitter_params(std::string_view id, const Params& params, std::uint64_t seed,
                     double lo = 0.8, double hi = 1.25);

// Two significant digits, as used in descriptions ("812" -> "810").
std::string round_sig2(double v);

// Integral values printed exactly, anything else through round_sig2.
std::string format_param(double v);

ClassDef make_set_cover_class();
ClassDef make_independent_set_class();
ClassDef make_combinatorial_auction_class();
ClassDef make_multiple_knapsack_class();
ClassDef make_facility_location_class();
ClassDef make_fixed_charge_flow_class();
ClassDef make_tsp_class();
ClassDef make_generalized_assignment_class();
ClassDef make_max_sat_class();

inline int iparam(const Params& p, const char* name) {
  return static_cast<int>(p.at(name));
}

}  // namespace milpret::gen
