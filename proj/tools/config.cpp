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

#include "config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "milpret/core/error.hpp"

namespace milpret::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& v) {
  T out{};
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    fail(ErrorKind::kInvalidConfig, "config key '" + key + "': cannot parse '" + v + "'");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  fail(ErrorKind::kInvalidConfig, "config key '" + key + "': expected true/false, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ",") + s;
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

KeyValues parse_config_text(const std::string& text) {
  KeyValues out;
  std::stringstream ss(text);
  std::string line;
  int no = 0;
  while (std::getline(ss, line)) {
    ++no;
    const auto t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      fail(ErrorKind::kInvalidConfig, "config line " + std::to_string(no) + ": expected key = value");
    }
    const auto key = trim(t.substr(0, eq));
    if (key.empty()) fail(ErrorKind::kInvalidConfig, "config line " + std::to_string(no) + ": empty key");
    out.emplace_back(key, trim(t.substr(eq + 1)));
  }
  return out;
}

KeyValues read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kIo, "cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

RunConfig apply_config(RunConfig cfg, const KeyValues& kv) {
  for (const auto& [k, v] : kv) {
    if (k != "preset") continue;
    if (v == "toy") {
      cfg.model = embed::ModelConfig::toy();
    } else if (v == "default") {
      cfg.model = embed::ModelConfig{};
    } else {
      fail(ErrorKind::kInvalidConfig, "preset must be toy or default");
    }
    cfg.preset = v;
  }
  auto& m = cfg.model;
  for (const auto& [k, v] : kv) {
    if (k == "preset") continue;
    if (k == "emb_size") m.emb_size = parse_number<int>(k, v);
    else if (k == "gcn_layers") m.gcn_layers = parse_number<int>(k, v);
    else if (k == "sampled_nodes") m.sampled_nodes = parse_number<int>(k, v);
    else if (k == "attn_layers") m.attn_layers = parse_number<int>(k, v);
    else if (k == "attn_heads") m.attn_heads = parse_number<int>(k, v);
    else if (k == "ffn_dim") m.ffn_dim = parse_number<int>(k, v);
    else if (k == "out_dim") m.out_dim = parse_number<int>(k, v);
    else if (k == "temperature") m.temperature = parse_number<double>(k, v);
    else if (k == "lr") m.lr = parse_number<double>(k, v);
    else if (k == "batch_size") m.batch_size = parse_number<int>(k, v);
    else if (k == "epochs") m.epochs = parse_number<int>(k, v);
    else if (k == "lr_schedule") {
      if (v == "constant") cfg.lr_schedule = embed::LrSchedule::kConstant;
      else if (v == "cosine") cfg.lr_schedule = embed::LrSchedule::kCosine;
      else fail(ErrorKind::kInvalidConfig, "lr_schedule must be constant or cosine");
    }
    else if (k == "split_ratio") m.split_ratio = parse_number<double>(k, v);
    else if (k == "seed") m.seed = parse_number<std::uint64_t>(k, v);
    else if (k == "classes") cfg.classes = split_list(v);
    else if (k == "per_class") cfg.per_class = parse_number<int>(k, v);
    else if (k == "toy_params") cfg.toy_params = parse_bool(k, v);
    else if (k == "corpus_seed") cfg.corpus_seed = parse_number<std::uint64_t>(k, v);
    else if (k == "sample_seed") cfg.sample_seed = parse_number<std::uint64_t>(k, v);
    else if (k == "max_nodes") cfg.max_nodes = parse_number<std::int64_t>(k, v);
    else if (k == "max_seconds") cfg.max_seconds = parse_number<double>(k, v);
    else if (k == "kway_trials") cfg.kway_trials = parse_number<int>(k, v);
    else if (k == "eval_seed") cfg.eval_seed = parse_number<std::uint64_t>(k, v);
    else if (k == "threads") cfg.threads = parse_number<int>(k, v);
    else fail(ErrorKind::kInvalidConfig, "unknown config key '" + k + "'");
  }
  embed::validate_config(cfg.model);
  expects(cfg.per_class >= 1, ErrorKind::kInvalidConfig, "per_class must be at least 1");
  expects(!cfg.classes.empty(), ErrorKind::kInvalidConfig, "classes must not be empty");
  return cfg;
}

std::string print_config(const RunConfig& c) {
  const auto& m = c.model;
  std::ostringstream os;
  os << "preset = " << c.preset << '\n'
     << "emb_size = " << m.emb_size << '\n'
     << "gcn_layers = " << m.gcn_layers << '\n'
     << "sampled_nodes = " << m.sampled_nodes << '\n'
     << "attn_layers = " << m.attn_layers << '\n'
     << "attn_heads = " << m.attn_heads << '\n'
     << "ffn_dim = " << m.ffn_dim << '\n'
     << "out_dim = " << m.out_dim << '\n'
     << "temperature = " << fmt(m.temperature) << '\n'
     << "lr = " << fmt(m.lr) << '\n'
     << "lr_schedule = "
     << (c.lr_schedule == embed::LrSchedule::kCosine ? "cosine" : "constant") << '\n'
     << "batch_size = " << m.batch_size << '\n'
     << "epochs = " << m.epochs << '\n'
     << "split_ratio = " << fmt(m.split_ratio) << '\n'
     << "seed = " << m.seed << '\n'
     << "classes = " << join(c.classes) << '\n'
     << "per_class = " << c.per_class << '\n'
     << "toy_params = " << (c.toy_params ? "true" : "false") << '\n'
     << "corpus_seed = " << c.corpus_seed << '\n'
     << "sample_seed = " << c.sample_seed << '\n'
     << "max_nodes = " << c.max_nodes << '\n'
     << "max_seconds = " << fmt(c.max_seconds) << '\n'
     << "kway_trials = " << c.kway_trials << '\n'
     << "eval_seed = " << c.eval_seed << '\n'
     << "threads = " << c.threads << '\n';
  return os.str();
}

}  // namespace milpret::cli
