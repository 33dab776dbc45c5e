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

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "milpret/core/mps.hpp"

namespace milpret {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("milpret_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  CliRun run(const std::string& args, const std::string& env = "MILPRET_MODEL=") const {
    const auto err_file = dir_ / "stderr.txt";
    const std::string cmd = "cd '" + dir_.string() + "' && " + env + " " + MILPRET_CLI_PATH + " " + args +
                            " 2>'" + err_file.string() + "'";
    CliRun r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof(buf), p)) > 0) r.out.append(buf, n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = read(err_file);
    return r;
  }

  static std::string read(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  // Value of the last "key=value" line with this key.
  static std::string value_of(const std::string& out, const std::string& key) {
    std::istringstream in(out);
    std::string line, found;
    while (std::getline(in, line)) {
      if (line.rfind(key + "=", 0) == 0) found = line.substr(key.size() + 1);
    }
    return found;
  }

  void write_tiny_config() const {
    std::ofstream(dir_ / "tiny.cfg") << "# small model for tests\n"
                                        "emb_size = 8\nattn_heads = 2\ngcn_layers = 1\nattn_layers = 1\n"
                                        "out_dim = 16\nsampled_nodes = 16\nepochs = 4\nbatch_size = 8\n"
                                        "classes = SC, KS\nper_class = 5\nthreads = 1\n";
  }

  fs::path dir_;
};

TEST_F(Cli, GenerateWritesParseableFiles) {
  const auto r = run("generate --class SC --count 2 --seed 7 --out out");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(value_of(r.out, "count"), "2");
  for (int i = 0; i < 2; ++i) {
    const auto inst = read_mps_file(dir_ / "out" / ("SC_7_" + std::to_string(i) + ".mps"));
    EXPECT_EQ(inst.num_vars(), 1500);
  }
  const auto csv = read(dir_ / "out" / "stats.csv");
  EXPECT_EQ(csv.rfind("file,n_vars,", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}

TEST_F(Cli, GenerateUnknownClassNamesValidOnes) {
  const auto r = run("generate --class NOPE --out out");
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("SC"), std::string::npos);
  EXPECT_NE(r.err.find("TSP"), std::string::npos);
}

TEST_F(Cli, GenerateZeroCount) {
  const auto r = run("generate --class KS --count 0 --out empty");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::is_empty(dir_ / "empty"));
}

TEST_F(Cli, GenerateParamOverrideAndValidation) {
  EXPECT_EQ(run("generate --class KS --param n_items=12 --param n_knapsacks=2 --out o").code, 0);
  EXPECT_EQ(read_mps_file(dir_ / "o" / "KS_0_0.mps").num_vars(), 24);
  EXPECT_NE(run("generate --class KS --param n_items=-3 --out o2").code, 0);
  EXPECT_NE(run("generate --class KS --param bogus --out o3").code, 0);
}

TEST_F(Cli, PrintConfigRoundTrips) {
  const auto a = run("--set epochs=7 --set classes=SC,IS --set lr_schedule=cosine --print-config");
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_NE(a.out.find("epochs = 7"), std::string::npos);
  EXPECT_NE(a.out.find("lr_schedule = cosine"), std::string::npos);
  std::ofstream(dir_ / "printed.cfg") << a.out;
  const auto b = run("--config printed.cfg --print-config");
  EXPECT_EQ(a.out, b.out);
}

TEST_F(Cli, ConfigErrors) {
  EXPECT_NE(run("--config missing.cfg train --out m.bin").code, 0);
  EXPECT_NE(run("--set no_such_key=1 --print-config").code, 0);
  EXPECT_NE(run("--set epochs=abc --print-config").code, 0);
  EXPECT_NE(run("--set lr_schedule=step --print-config").code, 0);
}

TEST_F(Cli, TrainHistoryAndDeterminism) {
  write_tiny_config();
  const auto a = run("--config tiny.cfg train --out a.bin");
  ASSERT_EQ(a.code, 0) << a.err;
  const auto b = run("--config tiny.cfg --set threads=2 train --out b.bin --history b.csv");
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(read(dir_ / "a.bin"), read(dir_ / "b.bin"));
  EXPECT_EQ(value_of(a.out, "checksum"), value_of(b.out, "checksum"));

  std::istringstream hist(read(dir_ / "a.bin.history.csv"));
  std::string line;
  std::getline(hist, line);
  EXPECT_EQ(line.rfind("epoch,train_loss", 0), 0u);
  int expect = 1;
  while (std::getline(hist, line)) EXPECT_EQ(std::stoi(line.substr(0, line.find(','))), expect++);
  EXPECT_EQ(expect, 5);
}

TEST_F(Cli, SimAndMatrix) {
  write_tiny_config();
  ASSERT_EQ(run("--config tiny.cfg train --out m.bin").code, 0);
  ASSERT_EQ(run("generate --class KS --toy --count 3 --out ks").code, 0);
  const auto same = run("sim --model m.bin ks/KS_0_0.mps ks/KS_0_0.mps");
  ASSERT_EQ(same.code, 0) << same.err;
  EXPECT_EQ(value_of(same.out, "sim"), "1.000000");

  const auto m = run("sim --model m.bin --matrix ks --out sim.csv");
  ASSERT_EQ(m.code, 0) << m.err;
  std::istringstream csv(read(dir_ / "sim.csv"));
  std::string line;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(csv, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cells.push_back(c);
    rows.push_back(cells);
  }
  ASSERT_EQ(rows.size(), 4u);
  for (int i = 1; i <= 3; ++i) {
    ASSERT_EQ(rows[i].size(), 4u);
    for (int j = 1; j <= 3; ++j) EXPECT_EQ(rows[i][j], rows[j][i]);
  }

  std::ofstream(dir_ / "bad.mps") << "NAME x\nROWS\n N obj\nCOLUMNS\n";
  EXPECT_NE(run("sim --model m.bin bad.mps ks/KS_0_0.mps").code, 0);
}

TEST_F(Cli, ModelFromEnvironment) {
  write_tiny_config();
  ASSERT_EQ(run("--config tiny.cfg train --out m.bin").code, 0);
  ASSERT_EQ(run("generate --class KS --toy --count 1 --out ks").code, 0);
  EXPECT_NE(run("sim ks/KS_0_0.mps ks/KS_0_0.mps").code, 0);
  const auto r = run("sim ks/KS_0_0.mps ks/KS_0_0.mps", "MILPRET_MODEL=m.bin");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(value_of(r.out, "sim"), "1.000000");
  const auto e = run("embed ks/KS_0_0.mps --out e.csv", "MILPRET_MODEL=m.bin");
  ASSERT_EQ(e.code, 0) << e.err;
  EXPECT_EQ(value_of(e.out, "dim"), "16");
}

TEST_F(Cli, LibraryRetrieveGenerate) {
  write_tiny_config();
  ASSERT_EQ(run("--config tiny.cfg train --out m.bin").code, 0);
  const auto lib = run("--config tiny.cfg --set per_class=2 library-build --model m.bin --out lib");
  ASSERT_EQ(lib.code, 0) << lib.err;
  EXPECT_EQ(value_of(lib.out, "entries"), "2");
  ASSERT_EQ(run("generate --class SC --toy --seed 99 --count 1 --out t").code, 0);
  const auto r = run("retrieve --library lib --model m.bin --target t/SC_99_0.mps --generate 5 --out gen");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_FALSE(value_of(r.out, "class").empty());
  EXPECT_EQ(value_of(r.out, "generated"), "5");
  int files = 0;
  for (const auto& e : fs::directory_iterator(dir_ / "gen")) files += e.path().extension() == ".mps";
  EXPECT_EQ(files, 5);

  fs::create_directories(dir_ / "nolib");
  EXPECT_NE(run("retrieve --library nolib --model m.bin --target t/SC_99_0.mps").code, 0);
}

TEST_F(Cli, EvalModes) {
  write_tiny_config();
  ASSERT_EQ(run("--config tiny.cfg train --out m.bin").code, 0);
  const auto k1 = run("--config tiny.cfg eval kway --k 1 --model m.bin --out kway.csv");
  ASSERT_EQ(k1.code, 0) << k1.err;
  EXPECT_EQ(value_of(k1.out, "milp_to_text"), "1.0000");
  EXPECT_EQ(value_of(k1.out, "text_to_milp"), "1.0000");
  EXPECT_EQ(read(dir_ / "kway.csv").rfind("mode,k,", 0), 0u);

  ASSERT_EQ(run("generate --class SC --toy --count 3 --out sc").code, 0);
  const auto js = run("eval js --a sc --b sc");
  ASSERT_EQ(js.code, 0) << js.err;
  EXPECT_EQ(value_of(js.out, "js"), "0.000000000");

  const auto fr = run("eval feasible-ratio --in sc");
  ASSERT_EQ(fr.code, 0) << fr.err;
  EXPECT_EQ(value_of(fr.out, "ratio"), "1.0000");
  EXPECT_NE(run("eval nonsense").code, 0);
}

TEST_F(Cli, Featurize) {
  ASSERT_EQ(run("generate --class KS --toy --count 1 --out ks").code, 0);
  const auto r = run("featurize ks/KS_0_0.mps --out g.txt");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read(dir_ / "g.txt").rfind("bipartite_graph v1", 0), 0u);
  EXPECT_EQ(value_of(r.out, "n"), "120");
}

}  // namespace
}  // namespace milpret
