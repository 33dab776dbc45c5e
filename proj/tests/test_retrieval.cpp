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
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <random>

#include "embed_fixtures.hpp"
#include "milpret/core/error.hpp"
#include "milpret/core/mps.hpp"
#include "milpret/generators/registry.hpp"
#include "milpret/lp/branch_and_bound.hpp"
#include "milpret/retrieval/library.hpp"
#include "milpret/retrieval/retrieve.hpp"
#include "milpret/sim/similarity.hpp"

namespace milpret {
namespace {

namespace fs = std::filesystem;
using retrieval::Library;

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no milpret::Error thrown";
  return ErrorKind::kIo;
}

gen::GeneratorSpec toy_spec(const char* id, std::uint64_t seed) {
  return gen::make_spec(id, gen::require_class(id).toy, seed);
}

const embed::ModelParams& model() {
  static const embed::ModelParams p = embed::init_model(testing::tiny_config());
  return p;
}

// Built once; two toy classes with three instances each.
const Library& small_library() {
  static const Library lib = [] {
    retrieval::BuildOptions o;
    o.sample_seed = 9;
    o.threads = 2;
    return retrieval::build_library({toy_spec("SC", 1), toy_spec("KS", 2)}, 3, model(), o);
  }();
  return lib;
}

fs::path fresh_dir(const std::string& name) {
  const auto d = fs::temp_directory_path() / ("milpret_test_" + name);
  fs::remove_all(d);
  return d;
}

TEST(Library, BuildShape) {
  const auto& lib = small_library();
  ASSERT_EQ(lib.entries.size(), 2u);
  EXPECT_EQ(lib.dim, 16);
  for (const auto& e : lib.entries) {
    EXPECT_EQ(e.embeddings.size(), 3u);
    EXPECT_EQ(e.instance_files.size(), 3u);
    EXPECT_EQ(e.instances.size(), 3u);
    EXPECT_EQ(e.feasible, std::vector<bool>(3, true));
    for (const auto& v : e.embeddings) EXPECT_NEAR(v.norm(), 1.0f, 1e-5f);
    EXPECT_FALSE(e.description.empty());
  }
  EXPECT_EQ(lib.entries[0].class_id, "SC");
  EXPECT_EQ(lib.entries[1].class_id, "KS");
}

TEST(Library, PerClassOne) {
  const auto lib = retrieval::build_library({toy_spec("IS", 1), toy_spec("CA", 1)}, 1, model());
  for (const auto& e : lib.entries) EXPECT_EQ(e.embeddings.size(), 1u);
}

TEST(Library, ZeroNodeBudgetIsEmpty) {
  retrieval::BuildOptions o;
  o.budget.max_nodes = 0;
  std::vector<std::string> warnings;
  o.warnings = &warnings;
  EXPECT_EQ(kind_of([&] { retrieval::build_library({toy_spec("SC", 1)}, 2, model(), o); }),
            ErrorKind::kEmptyLibrary);
  EXPECT_EQ(warnings.size(), 1u);
}

TEST(Library, RejectsBadArguments) {
  EXPECT_EQ(kind_of([&] { retrieval::build_library({toy_spec("SC", 1)}, 0, model()); }),
            ErrorKind::kInvalidParams);
  EXPECT_EQ(kind_of([&] { retrieval::build_library({toy_spec("SC", 1), toy_spec("SC", 2)}, 1, model()); }),
            ErrorKind::kInvalidParams);
}

TEST(Library, SaveLoadRoundTrip) {
  const auto& lib = small_library();
  const auto dir = fresh_dir("roundtrip");
  retrieval::save_library(lib, dir);
  const auto back = retrieval::load_library(dir, true);
  EXPECT_EQ(back.format_version, lib.format_version);
  EXPECT_EQ(back.model_checksum, lib.model_checksum);
  EXPECT_EQ(back.dim, lib.dim);
  ASSERT_EQ(back.entries.size(), lib.entries.size());
  for (std::size_t e = 0; e < lib.entries.size(); ++e) {
    const auto& a = lib.entries[e];
    const auto& b = back.entries[e];
    EXPECT_EQ(a.class_id, b.class_id);
    EXPECT_EQ(a.generator.params, b.generator.params);
    EXPECT_EQ(a.generator.seed, b.generator.seed);
    EXPECT_EQ(a.description, b.description);
    EXPECT_EQ(a.instance_files, b.instance_files);
    EXPECT_EQ(a.instance_descriptions, b.instance_descriptions);
    EXPECT_EQ(a.feasible, b.feasible);
    ASSERT_EQ(a.embeddings.size(), b.embeddings.size());
    for (std::size_t i = 0; i < a.embeddings.size(); ++i) {
      EXPECT_EQ(a.embeddings[i], b.embeddings[i]);
      EXPECT_EQ(write_mps(a.instances[i]), write_mps(b.instances[i]));
    }
  }
  fs::remove_all(dir);
}

TEST(Library, TruncatedEmbeddingFile) {
  const auto dir = fresh_dir("truncated");
  retrieval::save_library(small_library(), dir);
  const auto f = dir / small_library().entries[0].embedding_file;
  fs::resize_file(f, fs::file_size(f) - 4);
  EXPECT_EQ(kind_of([&] { retrieval::load_library(dir); }), ErrorKind::kCorruptLibrary);
  fs::remove_all(dir);
}

TEST(Library, FlippedByteFailsChecksum) {
  const auto dir = fresh_dir("flipped");
  retrieval::save_library(small_library(), dir);
  const auto f = dir / small_library().entries[1].embedding_file;
  std::fstream io(f, std::ios::in | std::ios::out | std::ios::binary);
  io.seekp(20);
  io.put('\x7f');
  io.close();
  EXPECT_EQ(kind_of([&] { retrieval::load_library(dir); }), ErrorKind::kCorruptLibrary);
  fs::remove_all(dir);
}

TEST(Library, UnknownFormatVersion) {
  const auto dir = fresh_dir("version");
  retrieval::save_library(small_library(), dir);
  nlohmann::json m;
  std::ifstream(dir / "manifest.json") >> m;
  m["format_version"] = 99;
  std::ofstream(dir / "manifest.json") << m.dump();
  EXPECT_EQ(kind_of([&] { retrieval::load_library(dir); }), ErrorKind::kVersionMismatch);
  fs::remove_all(dir);
}

TEST(Library, MalformedManifest) {
  const auto dir = fresh_dir("malformed");
  retrieval::save_library(small_library(), dir);
  std::ofstream(dir / "manifest.json") << "{\"format_version\": 1";
  EXPECT_EQ(kind_of([&] { retrieval::load_library(dir); }), ErrorKind::kCorruptLibrary);
  EXPECT_EQ(kind_of([&] { retrieval::load_library(dir / "missing"); }), ErrorKind::kEmptyLibrary);
  fs::remove_all(dir);
}

TEST(Retrieve, EmptyLibrary) {
  Library lib;
  lib.dim = 16;
  EXPECT_EQ(kind_of([&] { retrieval::retrieve(lib, model(), gen::generate_instance(toy_spec("SC", 5))); }),
            ErrorKind::kEmptyLibrary);
}

TEST(Retrieve, StoredInstanceScoresOne) {
  const auto& lib = small_library();
  retrieval::RetrieveOptions o;
  o.sample_seed = 9;
  for (const auto& e : lib.entries) {
    const auto r = retrieval::retrieve(lib, model(), e.instances[1], o);
    EXPECT_NEAR(r.score, 1.0, 1e-6);
    EXPECT_EQ(r.class_id, e.class_id);
    EXPECT_EQ(r.generator.params, e.generator.params);
  }
}

TEST(Retrieve, SingleEntryScoreIsNearestCosine) {
  Library lib = small_library();
  lib.entries.resize(1);
  const auto target = gen::generate_instance(toy_spec("KS", 77));
  const auto x = sim::embed_instance(model(), target, 4);
  retrieval::RetrieveOptions o;
  o.sample_seed = 4;
  const auto r = retrieval::retrieve(lib, model(), target, o);
  double best = -2;
  for (const auto& v : lib.entries[0].embeddings) best = std::max(best, v.cast<double>().dot(x));
  EXPECT_EQ(r.class_id, "SC");
  EXPECT_NEAR(r.score, best, 1e-12);
}

TEST(Retrieve, TiesGoToLowestClassId) {
  Library lib;
  lib.dim = 2;
  Eigen::VectorXf v(2);
  v << 1.0f, 0.0f;
  for (const char* id : {"KS", "CA", "SC"}) {
    retrieval::LibraryEntry e;
    e.class_id = id;
    e.embeddings = {v};
    lib.entries.push_back(e);
  }
  Eigen::VectorXd t(2);
  t << 0.6, 0.8;
  EXPECT_EQ(retrieval::retrieve_embedding(lib, t).class_id, "CA");
}

TEST(Retrieve, ScaledScoresKeepArgmax) {
  const auto& lib = small_library();
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n01;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd t = Eigen::VectorXd::NullaryExpr(lib.dim, [&] { return n01(rng); });
    t.normalize();
    const auto base = retrieval::retrieve_embedding(lib, t);
    for (float c : {0.01f, 0.3f, 0.9f}) {
      Library scaled = lib;
      for (auto& e : scaled.entries) {
        for (auto& v : e.embeddings) v *= c;
      }
      const auto r = retrieval::retrieve_embedding(scaled, t);
      EXPECT_EQ(r.class_id, base.class_id);
      EXPECT_EQ(r.instance_index, base.instance_index);
    }
  }
}

TEST(Retrieve, MonotoneLibraryGrowth) {
  const auto& full = small_library();
  const auto extra = retrieval::build_library({toy_spec("IS", 3)}, 2, model());
  std::vector<MilpInstance> targets = {gen::generate_instance(toy_spec("CA", 8)),
                                       gen::generate_instance(toy_spec("IS", 8))};
  for (const auto& t : targets) {
    const auto x = sim::embed_instance(model(), t, 0);
    Library lib;
    lib.dim = full.dim;
    double prev = -2;
    for (const auto* src : {&full.entries[0], &full.entries[1], &extra.entries[0]}) {
      lib.entries.push_back(*src);
      const double s = retrieval::retrieve_embedding(lib, x).score;
      EXPECT_GE(s, prev);
      prev = s;
    }
  }
}

TEST(Retrieve, Deterministic) {
  const auto target = gen::generate_instance(toy_spec("CA", 12));
  const auto a = retrieval::retrieve(small_library(), model(), target);
  const auto b = retrieval::retrieve(small_library(), model(), target);
  EXPECT_EQ(a.class_id, b.class_id);
  EXPECT_EQ(a.score, b.score);
}

TEST(RetrieveAndGenerate, DeterministicSingleRun) {
  const auto target = gen::generate_instance(toy_spec("SC", 31));
  retrieval::GenerateOptions o;
  o.seed = 5;
  const auto a = retrieval::retrieve_and_generate(small_library(), model(), target, 1, o);
  const auto b = retrieval::retrieve_and_generate(small_library(), model(), target, 1, o);
  ASSERT_EQ(a.instances.size(), 1u);
  EXPECT_EQ(write_mps(a.instances[0]), write_mps(b.instances[0]));
  EXPECT_EQ(kind_of([&] { retrieval::retrieve_and_generate(small_library(), model(), target, 0, o); }),
            ErrorKind::kInvalidParams);
}

TEST(RetrieveAndGenerate, SetCoverBatchIsFeasible) {
  Library lib = small_library();
  lib.entries.resize(1);  // SC only
  const auto target = gen::generate_instance(toy_spec("SC", 41));
  retrieval::GenerateOptions o;
  o.seed = 17;
  const auto out = retrieval::retrieve_and_generate(lib, model(), target, 20, o);
  ASSERT_EQ(out.instances.size(), 20u);
  lp::MilpLimits lim;
  lim.stop_at_first_incumbent = true;
  for (const auto& inst : out.instances) {
    for (auto s : inst.senses) EXPECT_EQ(s, RowSense::kGreaterEqual);
    EXPECT_EQ(lp::check_feasible(inst, lim), lp::Feasibility::kFeasible);
  }
}

TEST(RetrieveAndGenerate, ScaleToTarget) {
  Library lib = small_library();
  lib.entries.resize(1);
  const auto& cls = gen::require_class("SC");
  const auto big = gen::generate_instance(gen::make_spec("SC", gen::scale_params("SC", cls.toy, 2.0), 3));
  retrieval::GenerateOptions o;
  o.scale_to_target = true;
  o.seed = 2;
  const auto out = retrieval::retrieve_and_generate(lib, model(), big, 5, o);
  std::vector<int> n;
  for (const auto& i : out.instances) n.push_back(i.num_vars());
  std::sort(n.begin(), n.end());
  EXPECT_NEAR(n[2], big.num_vars(), 0.3 * big.num_vars());
  EXPECT_GT(out.scale_factor, 1.5);
}

TEST(RetrieveAndGenerate, OutOfRangeScaleFallsBack) {
  Library lib = small_library();
  lib.entries.resize(1);
  // A one-column target pushes the SC size params below their minimum.
  InstanceBuilder b("tiny");
  const int x = b.add_binary(1.0);
  b.add_row({{x, 1.0}}, RowSense::kGreaterEqual, 1.0);
  const MilpInstance tiny = std::move(b).build();
  std::vector<std::string> warnings;
  retrieval::GenerateOptions o;
  o.scale_to_target = true;
  o.warnings = &warnings;
  const auto out = retrieval::retrieve_and_generate(lib, model(), tiny, 1, o);
  EXPECT_EQ(out.scale_factor, 1.0);
  EXPECT_EQ(out.params, lib.entries[0].generator.params);
  EXPECT_EQ(warnings.size(), 1u);
}

}  // namespace
}  // namespace milpret
