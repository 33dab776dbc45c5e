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

// milpret command-line driver. Every subcommand ends with key=value lines on
// stdout; errors go to stderr with a nonzero exit code.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "config.hpp"
#include "milpret/core/error.hpp"
#include "milpret/core/mps.hpp"
#include "milpret/core/stats.hpp"
#include "milpret/embed/checkpoint.hpp"
#include "milpret/embed/loss.hpp"
#include "milpret/embed/text.hpp"
#include "milpret/embed/train.hpp"
#include "milpret/generators/registry.hpp"
#include "milpret/graph/bipartite.hpp"
#include "milpret/lp/branch_and_bound.hpp"
#include "milpret/retrieval/corpus.hpp"
#include "milpret/retrieval/library.hpp"
#include "milpret/retrieval/retrieve.hpp"
#include "milpret/sim/js_divergence.hpp"
#include "milpret/sim/similarity.hpp"

namespace fs = std::filesystem;

namespace milpret::cli {
namespace {

constexpr const char* kModelEnv = "MILPRET_MODEL";

struct Globals {
  std::string config_file;
  std::vector<std::string> sets;
  bool print_config = false;
};

RunConfig load_run_config(const Globals& g) {
  KeyValues kv;
  if (!g.config_file.empty()) kv = read_config_file(g.config_file);
  for (const auto& s : g.sets) {
    const auto parsed = parse_config_text(s);
    if (parsed.size() != 1) fail(ErrorKind::kInvalidConfig, "--set expects key=value, got '" + s + "'");
    kv.push_back(parsed[0]);
  }
  return apply_config(RunConfig{}, kv);
}

fs::path model_path(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kModelEnv); env && *env) return env;
  fail(ErrorKind::kIo, std::string("no model given (use --model or set ") + kModelEnv + ")");
}

std::vector<fs::path> mps_files(const fs::path& dir) {
  if (!fs::is_directory(dir)) fail(ErrorKind::kIo, "not a directory: " + dir.string());
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".mps") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<MilpInstance> read_all(const std::vector<fs::path>& files) {
  std::vector<MilpInstance> out;
  for (const auto& f : files) out.push_back(read_mps_file(f));
  return out;
}

lp::MilpLimits budget_of(const RunConfig& cfg) {
  lp::MilpLimits lim;
  lim.max_nodes = cfg.max_nodes;
  lim.max_seconds = cfg.max_seconds;
  return lim;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) fail(ErrorKind::kIo, "cannot write " + out);
  f << text;
}

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::vector<gen::GeneratorSpec> class_specs(const RunConfig& cfg, std::uint64_t seed) {
  std::vector<gen::GeneratorSpec> out;
  for (const auto& id : cfg.classes) {
    const auto& cls = gen::require_class(id);
    out.push_back(gen::make_spec(id, cfg.toy_params ? cls.toy : cls.defaults, seed));
  }
  return out;
}

// (MILP, text) pairs either from a saved library or from a fresh corpus.
std::vector<embed::TrainingPair> load_pairs(const RunConfig& cfg, const std::string& library,
                                            int text_dim) {
  const embed::TextEmbedder text(text_dim);
  if (library.empty()) {
    retrieval::CorpusOptions o;
    o.per_class = cfg.per_class;
    o.seed = cfg.corpus_seed;
    o.toy_params = cfg.toy_params;
    o.threads = cfg.threads;
    return retrieval::make_pairs(retrieval::build_corpus(cfg.classes, o), text);
  }
  const auto lib = retrieval::load_library(library, true);
  std::vector<embed::TrainingPair> pairs;
  for (const auto& e : lib.entries) {
    for (std::size_t i = 0; i < e.instances.size(); ++i) {
      embed::TrainingPair p;
      p.graph = embed::prepare_graph(graph::featurize(e.instances[i]));
      p.text = text.encode(e.instance_descriptions[i]);
      p.class_id = e.class_id;
      p.label = e.instance_files[i];
      pairs.push_back(std::move(p));
    }
  }
  return pairs;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  std::string class_id;
  std::vector<std::string> params;
  int count = 1;
  std::uint64_t seed = 0;
  std::string out;
  bool toy = false;
  bool jitter = false;
};

int cmd_generate(const GenerateArgs& a) {
  const auto& cls = gen::require_class(a.class_id);
  gen::Params overrides = a.toy ? cls.toy : gen::Params{};
  for (const auto& kv : a.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) fail(ErrorKind::kInvalidParams, "--param expects name=value, got '" + kv + "'");
    try {
      overrides[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    } catch (const std::exception&) {
      fail(ErrorKind::kInvalidParams, "--param value is not a number: '" + kv + "'");
    }
  }
  const auto params = gen::with_defaults(a.class_id, overrides);
  gen::validate_params(a.class_id, params);
  expects(a.count >= 0, ErrorKind::kInvalidParams, "--count must be non-negative");
  fs::create_directories(a.out);
  std::ostringstream csv;
  csv << "file";
  for (auto name : StructStats::names()) csv << ',' << name;
  csv << '\n';
  for (int i = 0; i < a.count; ++i) {
    const std::uint64_t s = gen::derive_seed(a.seed, static_cast<std::uint64_t>(i));
    const auto p = a.jitter ? gen::jitter_params(a.class_id, params, s) : params;
    const auto inst = gen::generate_instance(gen::make_spec(a.class_id, p, s));
    const std::string name = a.class_id + "_" + std::to_string(a.seed) + "_" + std::to_string(i) + ".mps";
    write_mps_file(inst, fs::path(a.out) / name);
    csv << name;
    for (double v : instance_stats(inst).as_array()) csv << ',' << fixed(v, 9);
    csv << '\n';
  }
  if (a.count > 0) emit(csv.str(), (fs::path(a.out) / "stats.csv").string());
  std::cout << "class=" << a.class_id << "\ncount=" << a.count << "\nout=" << a.out << '\n';
  return 0;
}

// --------------------------------------------------------------- featurize

int cmd_featurize(const std::string& in, const std::string& out, const RunConfig& cfg) {
  const auto inst = read_mps_file(in);
  graph::FeaturizeOptions fo;
  fo.milp.max_nodes = std::min<std::int64_t>(fo.milp.max_nodes, cfg.max_nodes);
  const auto g = graph::featurize(inst, fo);
  if (out.empty()) {
    std::cout << graph::dump_graph(g);
  } else {
    graph::write_graph_file(g, out);
  }
  std::cout << "n=" << g.n << "\nm=" << g.m << "\nedges=" << g.edges.size() << '\n';
  return 0;
}

// ------------------------------------------------------------------- train

int cmd_train(const RunConfig& cfg, const std::string& library, const std::string& out,
              std::string history) {
  auto pairs = load_pairs(cfg, library, cfg.model.out_dim);
  std::vector<std::string> ids;
  for (const auto& p : pairs) ids.push_back(p.class_id);
  const auto split = embed::stratified_split(ids, cfg.model.split_ratio, cfg.model.seed);
  std::vector<embed::TrainingPair> tr, va;
  for (int i : split.train) tr.push_back(pairs[static_cast<std::size_t>(i)]);
  for (int i : split.val) va.push_back(pairs[static_cast<std::size_t>(i)]);

  if (history.empty()) history = out + ".history.csv";
  std::ofstream hist(history);
  if (!hist) fail(ErrorKind::kIo, "cannot write " + history);
  hist << "epoch,train_loss,val4_milp_to_text,val4_text_to_milp,val10_milp_to_text,val10_text_to_milp\n";
  embed::TrainOptions to;
  to.threads = cfg.threads;
  to.lr_schedule = cfg.lr_schedule;
  to.kway_trials = cfg.kway_trials;
  to.eval_seed = cfg.eval_seed;
  to.on_epoch = [&](const embed::EpochRecord& r) {
    hist << r.epoch << ',' << fixed(r.train_loss, 9) << ',' << fixed(r.val4.milp_to_text, 4) << ','
         << fixed(r.val4.text_to_milp, 4) << ',' << fixed(r.val10.milp_to_text, 4) << ','
         << fixed(r.val10.text_to_milp, 4) << '\n';
    hist.flush();
    std::cerr << "epoch " << r.epoch << " loss " << fixed(r.train_loss, 4) << '\n';
  };
  const auto res = embed::train(embed::init_model(cfg.model), tr, va, to);
  embed::save_checkpoint(res.params, out);
  const auto& last = res.history.back();
  std::cout << "train_pairs=" << tr.size() << "\nval_pairs=" << va.size() << "\nepochs=" << last.epoch
            << "\nfirst_loss=" << fixed(res.history.front().train_loss, 9)
            << "\nfinal_loss=" << fixed(last.train_loss, 9)
            << "\nval4_milp_to_text=" << fixed(last.val4.milp_to_text, 4)
            << "\nval4_text_to_milp=" << fixed(last.val4.text_to_milp, 4)
            << "\nval10_milp_to_text=" << fixed(last.val10.milp_to_text, 4)
            << "\nval10_text_to_milp=" << fixed(last.val10.text_to_milp, 4) << "\ncheckpoint=" << out
            << "\nchecksum=" << embed::checkpoint_checksum(res.params) << "\nhistory=" << history << '\n';
  return 0;
}

// ------------------------------------------------------------------- embed

int cmd_embed(const RunConfig& cfg, const std::string& model, const std::vector<std::string>& files,
              const std::string& out) {
  const auto params = embed::load_checkpoint(model_path(model));
  std::ostringstream csv;
  csv << "file";
  for (int j = 0; j < params.cfg.out_dim; ++j) csv << ",e" << j;
  csv << '\n';
  for (const auto& f : files) {
    const auto x = sim::embed_instance(params, read_mps_file(f), cfg.sample_seed);
    csv << f;
    for (double v : x) csv << ',' << fixed(v, 9);
    csv << '\n';
  }
  emit(csv.str(), out);
  std::cout << "count=" << files.size() << "\ndim=" << params.cfg.out_dim << '\n';
  return 0;
}

// --------------------------------------------------------------------- sim

int cmd_sim(const RunConfig& cfg, const std::string& model, const std::vector<std::string>& files,
            const std::string& matrix_dir, const std::string& out) {
  const auto params = embed::load_checkpoint(model_path(model));
  if (!matrix_dir.empty()) {
    const auto paths = mps_files(matrix_dir);
    std::vector<std::string> labels;
    for (const auto& p : paths) labels.push_back(p.stem().string());
    const auto m = sim::sim_matrix(params, read_all(paths), labels, cfg.sample_seed, {}, cfg.threads);
    emit(sim::to_csv(m), out);
    std::cout << "size=" << labels.size() << '\n';
    return 0;
  }
  if (files.size() != 2) fail(ErrorKind::kInvalidConfig, "sim needs exactly two MPS files or --matrix");
  const double s = sim::embed_sim(params, read_mps_file(files[0]), read_mps_file(files[1]), cfg.sample_seed);
  std::cout << "sim=" << fixed(s) << '\n';
  return 0;
}

// ---------------------------------------------------------------- retrieve

struct RetrieveArgs {
  std::string library;
  std::string model;
  std::string target;
  int generate = 0;
  bool scale = false;
  std::uint64_t seed = 0;
  std::string out = ".";
};

int cmd_retrieve(const RunConfig& cfg, const RetrieveArgs& a) {
  const auto lib = retrieval::load_library(a.library);
  const auto params = embed::load_checkpoint(model_path(a.model));
  const auto target = read_mps_file(a.target);
  retrieval::RetrieveOptions ro;
  ro.sample_seed = cfg.sample_seed;
  std::vector<std::string> warnings;
  retrieval::RetrievalResult r;
  if (a.generate > 0) {
    retrieval::GenerateOptions go;
    go.retrieve = ro;
    go.seed = a.seed;
    go.scale_to_target = a.scale;
    go.warnings = &warnings;
    auto res = retrieval::retrieve_and_generate(lib, params, target, a.generate, go);
    r = res.retrieved;
    fs::create_directories(a.out);
    for (std::size_t i = 0; i < res.instances.size(); ++i) {
      write_mps_file(res.instances[i],
                     fs::path(a.out) / (r.class_id + "_" + std::to_string(a.seed) + "_" + std::to_string(i) + ".mps"));
    }
    std::cout << "scale_factor=" << fixed(res.scale_factor) << "\ngenerated=" << res.instances.size()
              << "\nout=" << a.out << '\n';
  } else {
    r = retrieval::retrieve(lib, params, target, ro);
  }
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  std::string ps;
  for (const auto& [k, v] : r.generator.params) ps += (ps.empty() ? "" : ";") + k + ":" + gen::round_sig2(v);
  std::cout << "class=" << r.class_id << "\nscore=" << fixed(r.score) << "\nparams=" << ps
            << "\nnearest=" << lib.entries[r.entry_index].instance_files[r.instance_index] << '\n';
  return 0;
}

// -------------------------------------------------------------------- eval

struct EvalArgs {
  std::string mode;
  std::string model;
  std::string library;
  int k = 4;
  std::string a, b, in;
  std::string out;
};

int cmd_eval(const RunConfig& cfg, const EvalArgs& a) {
  std::ostringstream csv;
  if (a.mode == "kway") {
    const auto params = embed::load_checkpoint(model_path(a.model));
    const auto pairs = load_pairs(cfg, a.library, params.cfg.out_dim);
    const auto acc = embed::kway_accuracy(embed::encode_all(params, pairs, cfg.sample_seed, cfg.threads),
                                          embed::text_matrix(pairs), a.k, cfg.kway_trials, cfg.eval_seed);
    csv << "mode,k,trials,pairs,milp_to_text,text_to_milp\nkway," << a.k << ',' << cfg.kway_trials << ','
        << pairs.size() << ',' << fixed(acc.milp_to_text, 4) << ',' << fixed(acc.text_to_milp, 4) << '\n';
    emit(csv.str(), a.out);
    std::cout << "milp_to_text=" << fixed(acc.milp_to_text, 4) << "\ntext_to_milp=" << fixed(acc.text_to_milp, 4)
              << '\n';
  } else if (a.mode == "js") {
    const auto ga = read_all(mps_files(a.a));
    const auto gb = read_all(mps_files(a.b));
    const double js = sim::js_structural_divergence(ga, gb);
    csv << "mode,n_a,n_b,js\njs," << ga.size() << ',' << gb.size() << ',' << fixed(js, 9) << '\n';
    emit(csv.str(), a.out);
    std::cout << "js=" << fixed(js, 9) << '\n';
  } else if (a.mode == "feasible-ratio") {
    const auto files = mps_files(a.in);
    expects(!files.empty(), ErrorKind::kIo, "no .mps files in " + a.in);
    int counts[3] = {0, 0, 0};
    auto lim = budget_of(cfg);
    lim.stop_at_first_incumbent = true;
    for (const auto& f : files) ++counts[static_cast<int>(lp::check_feasible(read_mps_file(f), lim))];
    const double ratio = static_cast<double>(counts[0]) / static_cast<double>(files.size());
    csv << "mode,count,feasible,infeasible,unknown,ratio\nfeasible-ratio," << files.size() << ',' << counts[0]
        << ',' << counts[1] << ',' << counts[2] << ',' << fixed(ratio, 4) << '\n';
    emit(csv.str(), a.out);
    std::cout << "ratio=" << fixed(ratio, 4) << '\n';
  } else {
    fail(ErrorKind::kInvalidConfig, "eval mode must be kway, js or feasible-ratio");
  }
  return 0;
}

// ----------------------------------------------------------- library-build

int cmd_library_build(const RunConfig& cfg, const std::string& model, const std::string& out,
                      std::uint64_t seed) {
  const auto path = model_path(model);
  const auto params = embed::load_checkpoint(path);
  std::vector<std::string> warnings;
  retrieval::BuildOptions o;
  o.budget = budget_of(cfg);
  o.sample_seed = cfg.sample_seed;
  o.threads = cfg.threads;
  o.model_ref = path.string();
  o.warnings = &warnings;
  const auto lib = retrieval::build_library(class_specs(cfg, seed), cfg.per_class, params, o);
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  retrieval::save_library(lib, out);
  std::size_t n = 0;
  for (const auto& e : lib.entries) n += e.embeddings.size();
  std::cout << "entries=" << lib.entries.size() << "\ninstances=" << n << "\nout=" << out << '\n';
  return 0;
}

}  // namespace
}  // namespace milpret::cli

int main(int argc, char** argv) {
  using namespace milpret::cli;
  CLI::App app{"MILP instance generation by generator retrieval"};
  app.require_subcommand(0, 1);
  Globals g;
  app.add_option("--config", g.config_file, "key = value run configuration file");
  app.add_option("--set", g.sets, "override one config key (key=value), repeatable");
  app.add_flag("--print-config", g.print_config, "print the effective configuration and exit");

  auto* gen_cmd = app.add_subcommand("generate", "write instances of one class as MPS files");
  GenerateArgs ga;
  gen_cmd->add_option("--class", ga.class_id, "class id")->required();
  gen_cmd->add_option("--param", ga.params, "parameter override name=value, repeatable");
  gen_cmd->add_option("--count", ga.count, "number of instances");
  gen_cmd->add_option("--seed", ga.seed, "base seed");
  gen_cmd->add_option("--out", ga.out, "output directory")->required();
  gen_cmd->add_flag("--toy", ga.toy, "start from the class's toy preset");
  gen_cmd->add_flag("--jitter", ga.jitter, "jitter size params per instance");

  auto* feat_cmd = app.add_subcommand("featurize", "dump the bipartite graph of an instance");
  std::string feat_in, feat_out;
  feat_cmd->add_option("input", feat_in, "MPS file")->required();
  feat_cmd->add_option("--out", feat_out, "graph file (stdout when omitted)");

  auto* train_cmd = app.add_subcommand("train", "train the embedding model");
  std::string train_lib, train_out, train_hist;
  train_cmd->add_option("--library", train_lib, "train on a saved library instead of a fresh corpus");
  train_cmd->add_option("--out", train_out, "checkpoint path")->required();
  train_cmd->add_option("--history", train_hist, "history CSV (default <out>.history.csv)");

  std::string model;
  auto* embed_cmd = app.add_subcommand("embed", "embed MPS files");
  std::vector<std::string> embed_files;
  std::string embed_out;
  embed_cmd->add_option("--model", model, "checkpoint (default $MILPRET_MODEL)");
  embed_cmd->add_option("inputs", embed_files, "MPS files")->required();
  embed_cmd->add_option("--out", embed_out, "CSV path (stdout when omitted)");

  auto* sim_cmd = app.add_subcommand("sim", "EmbedSim of two instances or a directory matrix");
  std::vector<std::string> sim_files;
  std::string sim_matrix_dir, sim_out;
  sim_cmd->add_option("--model", model, "checkpoint (default $MILPRET_MODEL)");
  sim_cmd->add_option("inputs", sim_files, "two MPS files");
  sim_cmd->add_option("--matrix", sim_matrix_dir, "directory of MPS files");
  sim_cmd->add_option("--out", sim_out, "matrix CSV path (stdout when omitted)");

  auto* ret_cmd = app.add_subcommand("retrieve", "retrieve the best generator for a target");
  RetrieveArgs ra;
  ret_cmd->add_option("--library", ra.library, "library directory")->required();
  ret_cmd->add_option("--model", ra.model, "checkpoint (default $MILPRET_MODEL)");
  ret_cmd->add_option("--target", ra.target, "target MPS file")->required();
  ret_cmd->add_option("--generate", ra.generate, "instances to generate with the retrieved generator");
  ret_cmd->add_flag("--scale", ra.scale, "scale the generator to the target's size");
  ret_cmd->add_option("--seed", ra.seed, "generation seed");
  ret_cmd->add_option("--out", ra.out, "directory for generated instances");

  auto* eval_cmd = app.add_subcommand("eval", "kway, js or feasible-ratio metrics");
  EvalArgs ea;
  eval_cmd->add_option("mode", ea.mode, "kway | js | feasible-ratio")->required();
  eval_cmd->add_option("--model", ea.model, "checkpoint (kway)");
  eval_cmd->add_option("--library", ea.library, "library providing the pairs (kway)");
  eval_cmd->add_option("--k", ea.k, "candidates per trial (kway)");
  eval_cmd->add_option("--a", ea.a, "first MPS directory (js)");
  eval_cmd->add_option("--b", ea.b, "second MPS directory (js)");
  eval_cmd->add_option("--in", ea.in, "MPS directory (feasible-ratio)");
  eval_cmd->add_option("--out", ea.out, "metrics CSV path (stdout when omitted)");

  auto* lib_cmd = app.add_subcommand("library-build", "build and save a retrieval library");
  std::string lib_out;
  std::uint64_t lib_seed = 0;
  bool lib_seed_set = false;
  lib_cmd->add_option("--model", model, "checkpoint (default $MILPRET_MODEL)");
  lib_cmd->add_option("--out", lib_out, "library directory")->required();
  lib_cmd->add_option("--seed", lib_seed, "base seed of the instances (default corpus_seed)")
      ->each([&](const std::string&) { lib_seed_set = true; });

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    const RunConfig cfg = load_run_config(g);
    if (g.print_config) {
      std::cout << print_config(cfg);
      return 0;
    }
    if (gen_cmd->parsed()) return cmd_generate(ga);
    if (feat_cmd->parsed()) return cmd_featurize(feat_in, feat_out, cfg);
    if (train_cmd->parsed()) return cmd_train(cfg, train_lib, train_out, train_hist);
    if (embed_cmd->parsed()) return cmd_embed(cfg, model, embed_files, embed_out);
    if (sim_cmd->parsed()) return cmd_sim(cfg, model, sim_files, sim_matrix_dir, sim_out);
    if (ret_cmd->parsed()) return cmd_retrieve(cfg, ra);
    if (eval_cmd->parsed()) return cmd_eval(cfg, ea);
    if (lib_cmd->parsed()) return cmd_library_build(cfg, model, lib_out, lib_seed_set ? lib_seed : cfg.corpus_seed);
    std::cout << app.help();
    return 0;
  } catch (const milpret::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
