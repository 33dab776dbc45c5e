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

#include "milpret/sim/js_divergence.hpp"

#include <algorithm>
#include <cmath>

#include "milpret/core/error.hpp"

namespace milpret::sim {

double js_divergence(std::span<const double> p, std::span<const double> q) {
  expects(p.size() == q.size() && !p.empty(), ErrorKind::kShapeMismatch, "histogram sizes differ");
  double sp = 0.0, sq = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    sp += p[i];
    sq += q[i];
  }
  expects(sp > 0.0 && sq > 0.0, ErrorKind::kDegenerateGroup, "empty histogram");
  double kl_p = 0.0, kl_q = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double a = p[i] / sp;
    const double b = q[i] / sq;
    const double m = 0.5 * (a + b);
    if (a > 0.0) kl_p += a * std::log2(a / m);
    if (b > 0.0) kl_q += b * std::log2(b / m);
  }
  return std::clamp(0.5 * (kl_p + kl_q), 0.0, 1.0);
}

double js_structural_divergence(const std::vector<StructStats>& a, const std::vector<StructStats>& b,
                                const JsOptions& opts) {
  if (a.size() < 2 || b.size() < 2) {
    fail(ErrorKind::kDegenerateGroup, "each group needs at least two instances");
  }
  expects(opts.bins >= 1 && opts.pseudo_count >= 0.0, ErrorKind::kInvalidConfig, "bad histogram options");
  double total = 0.0;
  for (std::size_t f = 0; f < StructStats::kCount; ++f) {
    double lo = INFINITY, hi = -INFINITY;
    for (const auto* group : {&a, &b}) {
      for (const auto& s : *group) {
        const double v = s.as_array()[f];
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    const auto hist = [&](const std::vector<StructStats>& g) {
      std::vector<double> h(static_cast<std::size_t>(opts.bins), opts.pseudo_count);
      for (const auto& s : g) {
        const double v = s.as_array()[f];
        int bin = 0;
        if (hi > lo) bin = static_cast<int>(std::floor((v - lo) / (hi - lo) * opts.bins));
        h[static_cast<std::size_t>(std::clamp(bin, 0, opts.bins - 1))] += 1.0;
      }
      return h;
    };
    total += js_divergence(hist(a), hist(b));
  }
  return total / static_cast<double>(StructStats::kCount);
}

double js_structural_divergence(const std::vector<MilpInstance>& a, const std::vector<MilpInstance>& b,
                                const JsOptions& opts) {
  if (a.size() < 2 || b.size() < 2) {
    fail(ErrorKind::kDegenerateGroup, "each group needs at least two instances");
  }
  std::vector<StructStats> sa, sb;
  for (const auto& i : a) sa.push_back(instance_stats(i));
  for (const auto& i : b) sb.push_back(instance_stats(i));
  return js_structural_divergence(sa, sb, opts);
}

}  // namespace milpret::sim
