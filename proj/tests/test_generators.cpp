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

#include <algorithm>
#include <set>

#include "milpret/core/error.hpp"
#include "milpret/core/mps.hpp"
#include "milpret/generators/registry.hpp"
#include "milpret/generators/rng.hpp"

namespace milpret::gen {
namespace {

TEST(Registry, ListsMandatoryClasses) {
  const auto classes = list_classes();
  EXPECT_GE(classes.size(), 8u);
  std::set<std::string> ids;
  for (const auto& c : classes) ids.insert(c.id);
  for (const char* id : {"SC", "IS", "CA", "KS", "CFL", "FCNF", "TSP", "GA"}) {
    EXPECT_TRUE(ids.count(id)) << id;
  }
  const auto sc = schema_of("SC");
  ASSERT_TRUE(sc.has_value());
  std::set<std::string> names;
  for (const auto& p : *sc) names.insert(p.name);
  EXPECT_EQ(names, (std::set<std::string>{"n_rows", "n_cols", "density", "max_coef"}));
  EXPECT_FALSE(schema_of("NOPE").has_value());
  EXPECT_EQ(find_class("NOPE"), nullptr);
}

TEST(Registry, UnknownClassAndBadParams) {
  try {
    require_class("XYZ");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUnknownClass);
    EXPECT_NE(std::string(e.what()).find("SC"), std::string::npos);
  }
  auto p = with_defaults("SC", {{"n_rows", 10}, {"n_cols", 20}, {"density", 0.1}});
  try {
    validate_params("SC", p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidParams);
  }
  p = with_defaults("SC", {{"bogus", 1}});
  EXPECT_THROW(validate_params("SC", p), Error);
}

TEST(SetCover, DefaultParamsShape) {
  const auto inst = generate_instance(make_spec("SC", with_defaults("SC", {}), 42));
  EXPECT_EQ(inst.num_rows(), 750);
  EXPECT_EQ(inst.num_vars(), 1500);
  EXPECT_EQ(inst.objective_sense, ObjectiveSense::kMinimize);
  for (auto t : inst.integrality) EXPECT_EQ(t, VarType::kBinary);
  for (auto s : inst.senses) EXPECT_EQ(s, RowSense::kGreaterEqual);
  for (double v : inst.b) EXPECT_EQ(v, 1.0);
  EXPECT_EQ(inst.nnz(), static_cast<std::int64_t>(750 * 1500 * 0.05));
}

TEST(SetCover, SmallCoverageCounts) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Params p{{"n_rows", 10}, {"n_cols", 20}, {"density", 0.3}, {"max_coef", 100}};
    const auto inst = generate_instance(make_spec("SC", p, seed));
    EXPECT_EQ(inst.nnz(), static_cast<std::int64_t>(10 * 20 * 0.3));
    std::vector<int> col_count(20, 0);
    for (int i = 0; i < inst.num_rows(); ++i) {
      EXPECT_GE(inst.row_cols(i).size(), 1u);
      for (int j : inst.row_cols(i)) ++col_count[j];
    }
    for (int c : col_count) EXPECT_GE(c, 2);
    for (double c : inst.c) {
      EXPECT_GE(c, 1.0);
      EXPECT_LE(c, 100.0);
    }
  }
}

TEST(SetCover, NnzFidelityOverParams) {
  Rng rng(7);
  for (int t = 0; t < 30; ++t) {
    const int rows = static_cast<int>(rng.uniform_int(5, 60));
    const int cols = static_cast<int>(rng.uniform_int(5, 80));
    const double density = rng.uniform(0.1, 0.6);
    Params p{{"n_rows", double(rows)}, {"n_cols", double(cols)}, {"density", density},
             {"max_coef", 50}};
    try {
      validate_params("SC", p);
    } catch (const Error&) {
      continue;
    }
    const auto inst = generate_instance(make_spec("SC", p, t));
    EXPECT_EQ(inst.nnz(), static_cast<std::int64_t>(rows * cols * density));
  }
}

TEST(Generators, DeterministicPerSpec) {
  for (const auto& id : class_ids()) {
    const auto spec = make_spec(id, find_class(id)->toy, 99);
    EXPECT_EQ(write_mps(generate_instance(spec)), write_mps(generate_instance(spec))) << id;
    EXPECT_FALSE(spec.description.empty());
  }
}

TEST(Scale, SizeParamsOnly) {
  const auto p = with_defaults("SC", {});
  const auto s = scale_params("SC", p, 2.0);
  EXPECT_EQ(s.at("n_rows"), 1500);
  EXPECT_EQ(s.at("n_cols"), 3000);
  EXPECT_EQ(s.at("density"), p.at("density"));
  EXPECT_EQ(scale_params("SC", p, 1.0), p);
  const auto t = scale_params("TSP", {{"n_cities", 20}}, 0.5);
  EXPECT_EQ(t.at("n_cities"), 10);
  EXPECT_THROW(scale_params("TSP", {{"n_cities", 20}}, 0.01), Error);
}

TEST(Jitter, DistinctAndValid) {
  const auto p = with_defaults("SC", {});
  int collisions = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto a = jitter_params("SC", p, 2 * s);
    const auto b = jitter_params("SC", p, 2 * s + 1);
    validate_params("SC", a);
    validate_params("SC", b);
    if (a.at("n_rows") == b.at("n_rows")) ++collisions;
    EXPECT_EQ(a, jitter_params("SC", p, 2 * s));
  }
  EXPECT_LT(collisions, 5);
  EXPECT_EQ(jitter_params("SC", p, 3, 1.0, 1.0), p);
  for (const auto& id : class_ids()) {
    for (std::uint64_t s = 0; s < 20; ++s) {
      validate_params(id, jitter_params(id, find_class(id)->defaults, s));
    }
  }
}

TEST(Jitter, ToyDescriptionsMostlyDistinct) {
  // 20 toy draws per class; identical descriptions should be rare. TSP has a
  // single small integer param, so it can only take a handful of values.
  for (const auto& id : class_ids()) {
    if (id == "TSP") continue;
    std::set<std::string> seen;
    for (std::uint64_t s = 0; s < 20; ++s) {
      seen.insert(make_spec(id, jitter_params(id, find_class(id)->toy, s), s).description);
    }
    EXPECT_GE(seen.size(), 14u) << id;
  }
}

TEST(Describe, FormatParam) {
  EXPECT_EQ(format_param(812), "812");
  EXPECT_EQ(format_param(0.0537), "0.054");
  EXPECT_EQ(format_param(3.0), "3");
  EXPECT_EQ(round_sig2(812), "810");
}

TEST(Rng, KnownSplitMixStream) {
  // Reference values of SplitMix64 seeded with 0.
  Rng r(0);
  EXPECT_EQ(r.next(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(r.next(), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(r.next(), 0x06c45d188009454fULL);
}

TEST(Rng, BelowAndSample) {
  Rng r(5);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(r.below(7), 7u);
  auto s = r.sample(50, 10);
  std::set<int> uniq(s.begin(), s.end());
  EXPECT_EQ(uniq.size(), 10u);
  auto perm = r.permutation(30);
  std::sort(perm.begin(), perm.end());
  for (std::size_t i = 0; i < perm.size(); ++i) EXPECT_EQ(perm[i], static_cast<int>(i));
}

}  // namespace
}  // namespace milpret::gen
