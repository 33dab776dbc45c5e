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

#include "milpret/core/error.hpp"
#include "milpret/core/instance.hpp"
#include "milpret/core/mps.hpp"
#include "milpret/core/stats.hpp"
#include "milpret/generators/registry.hpp"

namespace milpret {
namespace {

constexpr const char* kTiny =
    "NAME tiny\n"
    "ROWS\n"
    " N obj\n"
    " G c0\n"
    "COLUMNS\n"
    " M1 'MARKER' 'INTORG'\n"
    " x obj 1 c0 1\n"
    " y obj 1 c0 1\n"
    " M2 'MARKER' 'INTEND'\n"
    "RHS\n"
    " RHS c0 1\n"
    "BOUNDS\n"
    " UP BND x 1\n"
    " UP BND y 1\n"
    "ENDATA\n";

ErrorKind kind_of(const std::string& text) {
  try {
    parse_mps(text);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::kIo;
}

TEST(Mps, ParsesMinimalBinaryCover) {
  const auto inst = parse_mps(kTiny);
  EXPECT_EQ(inst.name, "tiny");
  ASSERT_EQ(inst.num_vars(), 2);
  ASSERT_EQ(inst.num_rows(), 1);
  EXPECT_EQ(inst.senses[0], RowSense::kGreaterEqual);
  EXPECT_EQ(inst.integrality[0], VarType::kBinary);
  EXPECT_EQ(inst.integrality[1], VarType::kBinary);
  EXPECT_DOUBLE_EQ(inst.b[0], 1.0);
  EXPECT_EQ(inst.nnz(), 2);
}

TEST(Mps, WriterEmitsOneGRowAndTwoColumns) {
  const auto text = write_mps(parse_mps(kTiny));
  std::size_t g_rows = 0;
  std::size_t pos = 0;
  while ((pos = text.find("\n G ", pos)) != std::string::npos) {
    ++g_rows;
    ++pos;
  }
  EXPECT_EQ(g_rows, 1u);
  EXPECT_NE(text.find("\n x obj 1\n"), std::string::npos);
  EXPECT_NE(text.find("\n y obj 1\n"), std::string::npos);
}

TEST(Mps, MissingEndataIsMalformed) {
  std::string text = kTiny;
  text.erase(text.find("ENDATA"));
  EXPECT_EQ(kind_of(text), ErrorKind::kMalformedSection);
}

TEST(Mps, UnknownRowAndEmptyProblem) {
  std::string text = kTiny;
  text.replace(text.find(" RHS c0 1"), 9, " RHS zz 1");
  EXPECT_EQ(kind_of(text), ErrorKind::kUnknownRowOrColumn);
  EXPECT_EQ(kind_of("NAME e\nROWS\n N obj\nCOLUMNS\nENDATA\n"), ErrorKind::kEmptyProblem);
  EXPECT_EQ(kind_of("NAME e\nROWS\n N obj\n Q c0\nCOLUMNS\n x c0 1\nENDATA\n"),
            ErrorKind::kMalformedSection);
}

TEST(Mps, InfiniteUpperBoundOmitted) {
  InstanceBuilder b("inf");
  const int x = b.add_var(1.0, 0.0, kInf, VarType::kContinuous);
  b.add_row({{x, 1.0}}, RowSense::kGreaterEqual, 2.0);
  const auto inst = std::move(b).build();
  const auto text = write_mps(inst);
  EXPECT_EQ(text.find(" UP "), std::string::npos);
  const auto back = parse_mps(text);
  EXPECT_TRUE(std::isinf(back.upper[0]));
}

TEST(Mps, BoundsRangesAndObjsense) {
  const char* text =
      "NAME b\n"
      "OBJSENSE\n"
      "    MAX\n"
      "ROWS\n"
      " N cost\n"
      " L r1\n"
      " E r2\n"
      "COLUMNS\n"
      " a cost 2 r1 1\n"
      " b cost 3 r1 1\n"
      " b r2 1\n"
      "RHS\n"
      " rhs r1 4 r2 1\n"
      "RANGES\n"
      " rng r1 3\n"
      "BOUNDS\n"
      " MI bnd a\n"
      " UP bnd a 5\n"
      " FR bnd b\n"
      "ENDATA\n";
  const auto inst = parse_mps(text);
  EXPECT_EQ(inst.objective_sense, ObjectiveSense::kMaximize);
  ASSERT_EQ(inst.num_rows(), 3);
  // Ranged L row becomes 1 <= r1 (in place) and r1 <= 4 (appended).
  EXPECT_EQ(inst.senses[0], RowSense::kGreaterEqual);
  EXPECT_DOUBLE_EQ(inst.b[0], 1.0);
  EXPECT_EQ(inst.senses[2], RowSense::kLessEqual);
  EXPECT_DOUBLE_EQ(inst.b[2], 4.0);
  EXPECT_EQ(inst.row_names[2], "r1_rng");
  EXPECT_TRUE(std::isinf(inst.lower[0]) && inst.lower[0] < 0);
  EXPECT_DOUBLE_EQ(inst.upper[0], 5.0);
  EXPECT_TRUE(std::isinf(inst.lower[1]) && std::isinf(inst.upper[1]));
  EXPECT_TRUE(structurally_equal(inst, parse_mps(write_mps(inst))));
}

TEST(Mps, RoundTripAcrossGenerators) {
  for (const auto& id : gen::class_ids()) {
    const auto* cls = gen::find_class(id);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const auto inst = gen::generate_instance(gen::make_spec(id, cls->toy, seed));
      const auto text = write_mps(inst);
      const auto back = parse_mps(text);
      EXPECT_TRUE(structurally_equal(inst, back)) << id << " seed " << seed;
      EXPECT_EQ(write_mps(back), text) << id << " seed " << seed;
    }
  }
}

TEST(Stats, IdentityBinary) {
  InstanceBuilder b("id");
  const int x = b.add_binary(1.0);
  const int y = b.add_binary(1.0);
  b.add_row({{x, 1.0}}, RowSense::kLessEqual, 1.0);
  b.add_row({{y, 1.0}}, RowSense::kLessEqual, 1.0);
  const auto s = instance_stats(std::move(b).build());
  EXPECT_DOUBLE_EQ(s.nnz_density, 0.5);
  EXPECT_DOUBLE_EQ(s.frac_binary_vars, 1.0);
  EXPECT_DOUBLE_EQ(s.mean_var_degree, 1.0);
}

TEST(Stats, SingleVarSingleRow) {
  InstanceBuilder b("one");
  const int x = b.add_var(2.0, 0.0, 3.0, VarType::kContinuous);
  b.add_row({{x, -4.0}}, RowSense::kGreaterEqual, -8.0);
  const auto s = instance_stats(std::move(b).build());
  EXPECT_EQ(s.n_vars, 1);
  EXPECT_EQ(s.n_cons, 1);
  EXPECT_DOUBLE_EQ(s.mean_cons_degree, 1.0);
  EXPECT_DOUBLE_EQ(s.mean_abs_coef, 4.0);
  EXPECT_DOUBLE_EQ(s.std_abs_coef, 0.0);
  EXPECT_DOUBLE_EQ(s.mean_rhs, -8.0);
  EXPECT_DOUBLE_EQ(s.frac_integer_vars, 0.0);
}

TEST(Stats, SetCoverDensityNearTarget) {
  const auto inst = gen::generate_instance(
      gen::make_spec("SC", gen::with_defaults("SC", {}), 42));
  const auto s = instance_stats(inst);
  EXPECT_GE(s.nnz_density, 0.045);
  EXPECT_LE(s.nnz_density, 0.055);
}

TEST(Instance, BuilderMergesDuplicatesAndDropsZeros) {
  InstanceBuilder b("m");
  const int x = b.add_binary(1.0);
  const int y = b.add_binary(1.0);
  b.add_row({{y, 1.0}, {x, 2.0}, {y, 1.0}, {x, -2.0}}, RowSense::kEqual, 2.0);
  const auto inst = std::move(b).build();
  ASSERT_EQ(inst.nnz(), 1);
  EXPECT_EQ(inst.col_index[0], y);
  EXPECT_DOUBLE_EQ(inst.value[0], 2.0);
}

TEST(Instance, ValidateRejectsInvertedBounds) {
  InstanceBuilder b("bad");
  b.add_var(0.0, 2.0, 1.0, VarType::kContinuous);
  try {
    std::move(b).build();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidInstance);
  }
}

}  // namespace
}  // namespace milpret
