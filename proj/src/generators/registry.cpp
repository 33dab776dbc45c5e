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

#include "milpret/generators/registry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "milpret/core/error.hpp"

namespace milpret::gen {
namespace {

const std::vector<ClassDef>& registry() {
  static const std::vector<ClassDef> kClasses = {
      make_set_cover_class(),          make_independent_set_class(),
      make_combinatorial_auction_class(), make_multiple_knapsack_class(),
      make_facility_location_class(),  make_fixed_charge_flow_class(),
      make_tsp_class(),                make_generalized_assignment_class(),
      make_max_sat_class(),
  };
  return kClasses;
}

std::string valid_ids() {
  std::string out;
  for (const auto& c : registry()) {
    if (!out.empty()) out += ", ";
    out += c.id;
  }
  return out;
}

}  // namespace

std::vector<ClassSummary> list_classes() {
  std::vector<ClassSummary> out;
  for (const auto& c : registry()) out.push_back({c.id, c.full_name, c.schema, c.defaults});
  return out;
}

const ClassDef* find_class(std::string_view id) {
  for (const auto& c : registry()) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

std::optional<std::vector<ParamSchema>> schema_of(std::string_view id) {
  const auto* c = find_class(id);
  if (!c) return std::nullopt;
  return c->schema;
}

std::vector<std::string> class_ids() {
  std::vector<std::string> out;
  for (const auto& c : registry()) out.push_back(c.id);
  return out;
}

const ClassDef& require_class(std::string_view id) {
  const auto* c = find_class(id);
  if (!c) {
    fail(ErrorKind::kUnknownClass,
         "unknown generator class '" + std::string(id) + "' (valid: " + valid_ids() + ")");
  }
  return *c;
}

void validate_params(std::string_view id, const Params& params) {
  const auto& cls = require_class(id);
  for (const auto& [name, value] : params) {
    bool known = false;
    for (const auto& s : cls.schema) known = known || s.name == name;
    if (!known) fail(ErrorKind::kInvalidParams, cls.id + ": unknown parameter '" + name + "'");
  }
  for (const auto& s : cls.schema) {
    const auto it = params.find(s.name);
    if (it == params.end()) fail(ErrorKind::kInvalidParams, cls.id + ": missing parameter " + s.name);
    const double v = it->second;
    if (!std::isfinite(v) || v < s.min || v > s.max) {
      std::ostringstream msg;
      msg << cls.id << ": " << s.name << "=" << v << " outside [" << s.min << ", " << s.max << "]";
      fail(ErrorKind::kInvalidParams, msg.str());
    }
    if (s.integer && v != std::floor(v)) {
      fail(ErrorKind::kInvalidParams, cls.id + ": " + s.name + " must be an integer");
    }
  }
  if (cls.check) cls.check(params);
}

Params with_defaults(std::string_view id, Params overrides) {
  const auto& cls = require_class(id);
  for (const auto& [k, v] : cls.defaults) overrides.emplace(k, v);
  return overrides;
}

std::string describe(std::string_view id, const Params& params) {
  return require_class(id).describe(params);
}

GeneratorSpec make_spec(std::string_view id, Params params, std::uint64_t seed) {
  validate_params(id, params);
  GeneratorSpec spec;
  spec.class_id = std::string(id);
  spec.description = describe(id, params);
  spec.params = std::move(params);
  spec.seed = seed;
  return spec;
}

MilpInstance generate_instance(const GeneratorSpec& spec) {
  const auto& cls = require_class(spec.class_id);
  validate_params(spec.class_id, spec.params);
  Rng rng(spec.seed);
  return cls.generate(spec.params, rng);
}

Params scale_params(std::string_view id, const Params& params, double factor) {
  const auto& cls = require_class(id);
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    fail(ErrorKind::kInvalidParams, "scale factor must be positive");
  }
  Params out = params;
  for (const auto& s : cls.schema) {
    if (!s.size) continue;
    const auto it = out.find(s.name);
    if (it == out.end()) continue;
    double v = it->second * factor;
    if (s.integer) v = std::round(v);
    it->second = v;
  }
  validate_params(id, out);
  return out;
}

Params jitter_params(std::string_view id, const Params& params, std::uint64_t seed, double lo,
                     double hi) {
  const auto& cls = require_class(id);
  Rng rng(derive_seed(seed, 0x6a177e7));
  // Size params and continuous shape params each get their own factor.
  std::vector<double> factor(cls.schema.size(), 1.0);
  for (std::size_t k = 0; k < cls.schema.size(); ++k) {
    const auto& s = cls.schema[k];
    if (s.size || !s.integer) factor[k] = rng.uniform(lo, hi);
  }
  for (int attempt = 0; attempt < 32; ++attempt) {
    Params out = params;
    for (std::size_t k = 0; k < cls.schema.size(); ++k) {
      const auto& s = cls.schema[k];
      auto it = out.find(s.name);
      if (it == out.end() || factor[k] == 1.0) continue;
      double v = it->second * factor[k];
      if (s.integer) v = std::round(v);
      it->second = std::clamp(v, s.min, s.max);
    }
    try {
      validate_params(id, out);
      return out;
    } catch (const Error&) {
      for (double& f : factor) f = std::sqrt(f);
    }
  }
  return params;
}

std::string format_param(double v) {
  if (v == std::round(v) && std::abs(v) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.0f", v);
    return buf;
  }
  return round_sig2(v);
}

std::string round_sig2(double v) {
  if (v == 0.0) return "0";
  const double mag = std::pow(10.0, std::floor(std::log10(std::abs(v))) - 1.0);
  const double r = std::round(v / mag) * mag;
  char buf[32];
  if (std::abs(r) >= 10.0) {
    std::snprintf(buf, sizeof(buf), "%.0f", r);
  } else {
    std::snprintf(buf, sizeof(buf), "%.2g", r);
  }
  return buf;
}

}  // namespace milpret::gen
