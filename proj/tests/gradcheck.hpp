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

// Finite-difference check of the contrastive loss through the full encoder.

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "embed_fixtures.hpp"
#include "milpret/embed/loss.hpp"
#include "milpret/embed/train.hpp"

namespace milpret::testing {

struct GradCheckReport {
  std::size_t checked = 0;
  std::size_t failed = 0;
  double worst_rel = 0.0;
  std::string worst_name;
};

inline GradCheckReport run_gradient_check(std::uint64_t seed, double h = 1e-5, double tol = 1e-4) {
  using namespace milpret::embed;
  auto params = init_model(tiny_config());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<TrainingPair> pairs;
  for (int i = 0; i < 5; ++i) {
    TrainingPair p;
    p.graph = prepare_graph(random_tiny_graph(rng));
    p.text = Eigen::VectorXd::NullaryExpr(16, [&] { return nd(rng); }).normalized();
    pairs.push_back(std::move(p));
  }
  const std::vector<int> idx{0, 1, 2, 3, 4};
  const std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  std::vector<Mat> grads;
  batch_gradient(params, pairs, idx, seeds, &grads, 1);
  GradCheckReport rep;
  for (std::size_t t = 0; t < params.tensors.size(); ++t) {
    Mat& w = params.tensors[t];
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      const double orig = w.data()[i];
      w.data()[i] = orig + h;
      const double up = batch_gradient(params, pairs, idx, seeds, nullptr, 1);
      w.data()[i] = orig - h;
      const double down = batch_gradient(params, pairs, idx, seeds, nullptr, 1);
      w.data()[i] = orig;
      const double fd = (up - down) / (2.0 * h);
      const double an = grads[t].data()[i];
      const double rel = std::abs(an - fd) / std::max({std::abs(an), std::abs(fd), 1e-6});
      ++rep.checked;
      if (rel >= tol) ++rep.failed;
      if (rel > rep.worst_rel) {
        rep.worst_rel = rel;
        rep.worst_name = params.names[t] + "[" + std::to_string(i) + "]";
      }
    }
  }
  return rep;
}

}  // namespace milpret::testing
