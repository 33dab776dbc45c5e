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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "embed_fixtures.hpp"
#include "milpret/core/error.hpp"
#include "milpret/core/stats.hpp"
#include "milpret/generators/registry.hpp"
#include "milpret/sim/js_divergence.hpp"
#include "milpret/sim/similarity.hpp"

namespace milpret {
namespace {

// Entropy form, base 2: JS = H(M) - (H(P) + H(Q)) / 2.
double entropy_js(std::vector<double> p, std::vector<double> q) {
  double sp = 0, sq = 0;
  for (double v : p) sp += v;
  for (double v : q) sq += v;
  const auto h = [](double x) { return x > 0 ? -x * std::log2(x) : 0.0; };
  double hm = 0, hp = 0, hq = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] /= sp;
    q[i] /= sq;
    hm += h(0.5 * (p[i] + q[i]));
    hp += h(p[i]);
    hq += h(q[i]);
  }
  return hm - 0.5 * (hp + hq);
}

std::vector<StructStats> constant_group(double v, int count) {
  StructStats s;
  auto arr = s.as_array();
  arr.fill(v);
  StructStats out{arr[0], arr[1], arr[2], arr[3], arr[4], arr[5], arr[6], arr[7], arr[8], arr[9], arr[10]};
  return std::vector<StructStats>(static_cast<std::size_t>(count), out);
}

std::vector<MilpInstance> sc_group(std::uint64_t seed0, int count) {
  std::vector<MilpInstance> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(gen::generate_instance(gen::make_spec("SC", gen::with_defaults("SC", {}), seed0 + static_cast<std::uint64_t>(i))));
  }
  return out;
}

embed::ModelParams tiny_model() { return embed::init_model(testing::tiny_config()); }

MilpInstance toy(const char* id, std::uint64_t seed) {
  return gen::generate_instance(gen::make_spec(id, gen::require_class(id).toy, seed));
}

TEST(JsDivergence, MatchesEntropyForm) {
  const std::vector<std::pair<std::vector<double>, std::vector<double>>> cases = {
      {{1, 0}, {0, 1}},
      {{0.5, 0.5}, {1, 0}},
      {{3, 1, 1, 5}, {1, 1, 6, 2}},
      {{2, 2, 2}, {2, 2, 2}},
  };
  for (const auto& [p, q] : cases) {
    EXPECT_NEAR(sim::js_divergence(p, q), entropy_js(p, q), 1e-12);
  }
  EXPECT_NEAR(sim::js_divergence(std::vector<double>{0.5, 0.5}, std::vector<double>{1, 0}),
              0.311278124459132, 1e-12);
}

TEST(JsDivergence, IdenticalGroupsAreZero) {
  const auto a = sc_group(1, 4);
  EXPECT_NEAR(sim::js_structural_divergence(a, a), 0.0, 1e-9);
}

TEST(JsDivergence, DisjointSupportIsOneWithoutSmoothing) {
  sim::JsOptions o;
  o.pseudo_count = 0;
  EXPECT_NEAR(sim::js_structural_divergence(constant_group(0, 3), constant_group(1, 3), o), 1.0, 1e-12);
}

TEST(JsDivergence, DisjointSupportWithAddOneSmoothing) {
  // 3 instances in bin 0 vs 3 in bin 9, plus one per bin.
  std::vector<double> p(10, 1.0), q(10, 1.0);
  p[0] += 3;
  q[9] += 3;
  EXPECT_NEAR(sim::js_structural_divergence(constant_group(0, 3), constant_group(1, 3)),
              entropy_js(p, q), 1e-12);
}

TEST(JsDivergence, SymmetricAndBounded) {
  const auto a = sc_group(10, 4);
  std::vector<MilpInstance> b;
  for (std::uint64_t s = 0; s < 4; ++s) b.push_back(toy("TSP", s));
  const double ab = sim::js_structural_divergence(a, b);
  EXPECT_EQ(ab, sim::js_structural_divergence(b, a));
  EXPECT_GE(ab, 0.0);
  EXPECT_LE(ab, 1.0);
}

TEST(JsDivergence, SameClassSeedsAreClose) {
  const double v = sim::js_structural_divergence(sc_group(100, 10), sc_group(200, 10));
  EXPECT_LT(v, 0.3);
}

TEST(JsDivergence, DegenerateGroup) {
  try {
    (void)sim::js_structural_divergence(sc_group(1, 1), sc_group(2, 3));
    FAIL() << "expected DegenerateGroup";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDegenerateGroup);
  }
}

TEST(EmbedSim, SelfSimilarityIsOne) {
  const auto params = tiny_model();
  const auto p = toy("KS", 3);
  EXPECT_NEAR(sim::embed_sim(params, p, p, 7), 1.0, 1e-6);
}

TEST(EmbedSim, SymmetricAndInRange) {
  const auto params = tiny_model();
  const auto p = toy("KS", 3);
  const auto q = toy("SC", 4);
  const double pq = sim::embed_sim(params, p, q, 7);
  EXPECT_EQ(pq, sim::embed_sim(params, q, p, 7));
  EXPECT_GE(pq, -1.0);
  EXPECT_LE(pq, 1.0);
}

TEST(EmbedSim, CosineClamps) {
  Eigen::VectorXd a(2);
  a << 1.0 + 1e-12, 0.0;
  EXPECT_LE(sim::cosine(a, a), 1.0);
}

TEST(SimMatrix, SingleInstance) {
  const auto m = sim::sim_matrix(tiny_model(), {toy("IS", 1)}, {"a"}, 3);
  ASSERT_EQ(m.values.rows(), 1);
  EXPECT_NEAR(m.values(0, 0), 1.0, 1e-6);
}

TEST(SimMatrix, SymmetricMatchesPairwise) {
  const auto params = tiny_model();
  const std::vector<MilpInstance> insts = {toy("IS", 1), toy("KS", 2), toy("SC", 3), toy("CA", 4)};
  const auto m = sim::sim_matrix(params, insts, {"is", "ks", "sc", "ca"}, 5, {}, 2);
  ASSERT_EQ(m.values.rows(), 4);
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(m.values(i, i), 1.0, 1e-6);
    for (int j = 0; j < 4; ++j) {
      EXPECT_EQ(m.values(i, j), m.values(j, i));
      EXPECT_NEAR(m.values(i, j), sim::embed_sim(params, insts[i], insts[j], 5), 1e-12);
    }
  }
  const auto csv = sim::to_csv(m);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "id,is,ks,sc,ca");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}

TEST(SimMatrix, LabelCountMismatch) {
  EXPECT_THROW((void)sim::sim_matrix(tiny_model(), {toy("IS", 1)}, {"a", "b"}, 3), Error);
}

}  // namespace
}  // namespace milpret
