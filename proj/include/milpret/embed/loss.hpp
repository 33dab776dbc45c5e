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

#include "milpret/embed/tape.hpp"

namespace milpret::embed {

struct LossResult {
  double value = 0.0;
  Mat grad_p;  // dL/dP, N x D
};

// Symmetric cross-entropy over s_ij = p_i . t_j / temperature:
//   L = 1/(2N) sum_i [ -log softmax_j(s_i.)_i - log softmax_j(s_.i)_i ]
// Rows of P and T are the paired unit vectors. Throws kDegenerateBatch for N < 2.
LossResult contrastive_loss(const Mat& P, const Mat& T, double temperature);

struct KwayAccuracy {
  double milp_to_text = 0.0;
  double text_to_milp = 0.0;
};

// Each trial draws k distinct pairs; every drawn item queries the k
// candidates of the other modality by cosine and succeeds when its partner
// is the strict maximum. Throws kInvalidK unless 1 <= k <= N.
KwayAccuracy kway_accuracy(const Mat& P, const Mat& T, int k, int trials, std::uint64_t seed);

}  // namespace milpret::embed
