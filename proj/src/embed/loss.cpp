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

#include "milpret/embed/loss.hpp"

#include <cmath>

#include "milpret/core/error.hpp"
#include "milpret/generators/rng.hpp"

namespace milpret::embed {

namespace {

// Row-wise softmax; also returns the per-row log-sum-exp.
Mat softmax(const Mat& s, Eigen::VectorXd& lse) {
  Mat y(s.rows(), s.cols());
  lse.resize(s.rows());
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    const double mx = s.row(i).maxCoeff();
    y.row(i) = (s.row(i).array() - mx).exp();
    const double z = y.row(i).sum();
    y.row(i) /= z;
    lse(i) = mx + std::log(z);
  }
  return y;
}

}  // namespace

LossResult contrastive_loss(const Mat& P, const Mat& T, double temperature) {
  expects(P.rows() == T.rows() && P.cols() == T.cols(), ErrorKind::kShapeMismatch,
          "P and T must have the same shape");
  if (P.rows() < 2) fail(ErrorKind::kDegenerateBatch, "contrastive loss needs at least 2 pairs");
  expects(temperature > 0.0, ErrorKind::kInvalidConfig, "temperature must be positive");
  const auto n = P.rows();
  const Mat s = P * T.transpose() / temperature;
  Eigen::VectorXd lse_r, lse_c;
  const Mat pr = softmax(s, lse_r);                            // MILP -> text
  const Mat pc = softmax(s.transpose(), lse_c).transpose();    // text -> MILP, column softmax
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) total += (lse_r(i) - s(i, i)) + (lse_c(i) - s(i, i));
  LossResult r;
  r.value = total / (2.0 * static_cast<double>(n));
  Mat ds = pr + pc;
  ds.diagonal().array() -= 2.0;
  ds /= 2.0 * static_cast<double>(n);
  r.grad_p = ds * T / temperature;
  return r;
}

KwayAccuracy kway_accuracy(const Mat& P, const Mat& T, int k, int trials, std::uint64_t seed) {
  expects(P.rows() == T.rows() && P.cols() == T.cols(), ErrorKind::kShapeMismatch,
          "P and T must have the same shape");
  const int n = static_cast<int>(P.rows());
  if (k < 1 || k > n) {
    fail(ErrorKind::kInvalidK, "k must lie in [1, " + std::to_string(n) + "], got " + std::to_string(k));
  }
  expects(trials >= 1, ErrorKind::kInvalidK, "trials must be positive");
  const Mat sims = P * T.transpose();
  gen::Rng rng(seed);
  long hits_m2t = 0, hits_t2m = 0, total = 0;
  for (int t = 0; t < trials; ++t) {
    const auto pick = rng.sample(n, k);
    for (int a : pick) {
      bool m2t = true, t2m = true;
      for (int b : pick) {
        if (b == a) continue;
        if (!(sims(a, a) > sims(a, b))) m2t = false;
        if (!(sims(a, a) > sims(b, a))) t2m = false;
      }
      hits_m2t += m2t;
      hits_t2m += t2m;
      ++total;
    }
  }
  return {static_cast<double>(hits_m2t) / static_cast<double>(total),
          static_cast<double>(hits_t2m) / static_cast<double>(total)};
}

}  // namespace milpret::embed
