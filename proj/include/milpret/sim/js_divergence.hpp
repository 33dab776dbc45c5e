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

#include <span>
#include <vector>

#include "milpret/core/instance.hpp"
#include "milpret/core/stats.hpp"

namespace milpret::sim {

struct JsOptions {
  int bins = 10;
  // Added to every bin before normalising (1 = add-one smoothing). With 0,
  // groups with disjoint support score exactly 1.
  double pseudo_count = 1.0;
};

// Base-2 Jensen-Shannon divergence of two histograms (normalised internally).
double js_divergence(std::span<const double> p, std::span<const double> q);

// Per StructStats field: histogram both groups over the pooled [min, max]
// range, take the JS divergence, then average over fields.
// Throws kDegenerateGroup when either group has fewer than two instances.
double js_structural_divergence(const std::vector<StructStats>& a, const std::vector<StructStats>& b,
                                const JsOptions& opts = {});
double js_structural_divergence(const std::vector<MilpInstance>& a, const std::vector<MilpInstance>& b,
                                const JsOptions& opts = {});

}  // namespace milpret::sim
