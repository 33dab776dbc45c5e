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

#include "milpret/embed/model.hpp"

#include <cmath>

#include "milpret/core/error.hpp"
#include "milpret/generators/rng.hpp"

namespace milpret::embed {

ModelConfig ModelConfig::toy() {
  ModelConfig c;
  c.sampled_nodes = 128;
  c.out_dim = 256;
  return c;
}

void validate_config(const ModelConfig& c) {
  const auto bad = [](const std::string& what) { fail(ErrorKind::kInvalidConfig, what); };
  if (c.emb_size < 1) bad("emb_size must be positive");
  if (c.attn_heads < 1) bad("attn_heads must be positive");
  if (c.emb_size % c.attn_heads != 0) bad("emb_size must be divisible by attn_heads");
  if (c.gcn_layers < 0 || c.attn_layers < 0) bad("layer counts must be non-negative");
  if (c.sampled_nodes < 1) bad("sampled_nodes must be positive");
  if (c.ffn_dim < 0) bad("ffn_dim must be non-negative");
  if (c.out_dim < 1) bad("out_dim must be at least 1");
  if (!(c.temperature > 0.0)) bad("temperature must be positive");
  if (!(c.lr >= 0.0)) bad("lr must be non-negative");
  if (c.batch_size < 2) bad("batch_size must be at least 2");
  if (c.epochs < 0) bad("epochs must be non-negative");
  if (!(c.split_ratio > 0.0 && c.split_ratio < 1.0)) bad("split_ratio must lie in (0, 1)");
}

std::size_t ModelParams::count() const {
  std::size_t s = 0;
  for (const auto& t : tensors) s += static_cast<std::size_t>(t.size());
  return s;
}

int ModelParams::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<int>(i);
  }
  return -1;
}

std::size_t param_count(const ModelConfig& c) {
  const std::size_t e = static_cast<std::size_t>(c.emb_size);
  const std::size_t f = static_cast<std::size_t>(c.ffn());
  const std::size_t d = static_cast<std::size_t>(c.out_dim);
  const std::size_t g = static_cast<std::size_t>(c.gcn_layers);
  const std::size_t a = static_cast<std::size_t>(c.attn_layers);
  return 2 * e * e + 30 * e + 4 * g * (e * e + e) + a * (4 * e * e + 2 * e * f + 9 * e + f) +
         e * d + d;
}

namespace {

enum class Init { kWeight, kZero, kOne, kVector };

struct Layout {
  std::vector<std::string> names;
  std::vector<std::pair<int, int>> shapes;
  std::vector<Init> init;
  void add(std::string name, int r, int c, Init how) {
    names.push_back(std::move(name));
    shapes.emplace_back(r, c);
    init.push_back(how);
  }
};

Layout layout(const ModelConfig& c) {
  const int e = c.emb_size;
  Layout l;
  l.add("var_mlp.w1", graph::kVarFeatures, e, Init::kWeight);
  l.add("var_mlp.b1", 1, e, Init::kZero);
  l.add("var_mlp.w2", e, e, Init::kWeight);
  l.add("var_mlp.b2", 1, e, Init::kZero);
  l.add("cons_mlp.w1", graph::kConsFeatures, e, Init::kWeight);
  l.add("cons_mlp.b1", 1, e, Init::kZero);
  l.add("cons_mlp.w2", e, e, Init::kWeight);
  l.add("cons_mlp.b2", 1, e, Init::kZero);
  l.add("edge.w", 1, e, Init::kWeight);
  l.add("edge.b", 1, e, Init::kZero);
  l.add("summary.init", 1, e, Init::kVector);
  for (int k = 0; k < c.gcn_layers; ++k) {
    const std::string p = "conv" + std::to_string(k) + ".";
    for (const char* part : {"row", "col", "sum_var", "sum_cons"}) {
      l.add(p + part + "_w", e, e, Init::kWeight);
      l.add(p + part + "_b", 1, e, Init::kZero);
    }
  }
  for (int k = 0; k < c.attn_layers; ++k) {
    const std::string p = "attn" + std::to_string(k) + ".";
    l.add(p + "ln1_g", 1, e, Init::kOne);
    l.add(p + "ln1_b", 1, e, Init::kZero);
    l.add(p + "qkv_w", e, 3 * e, Init::kWeight);
    l.add(p + "qkv_b", 1, 3 * e, Init::kZero);
    l.add(p + "out_w", e, e, Init::kWeight);
    l.add(p + "out_b", 1, e, Init::kZero);
    l.add(p + "ln2_g", 1, e, Init::kOne);
    l.add(p + "ln2_b", 1, e, Init::kZero);
    l.add(p + "ff1_w", e, c.ffn(), Init::kWeight);
    l.add(p + "ff1_b", 1, c.ffn(), Init::kZero);
    l.add(p + "ff2_w", c.ffn(), e, Init::kWeight);
    l.add(p + "ff2_b", 1, e, Init::kZero);
  }
  l.add("head.w", e, c.out_dim, Init::kWeight);
  l.add("head.b", 1, c.out_dim, Init::kZero);
  return l;
}

}  // namespace

ModelParams init_model(const ModelConfig& cfg) {
  validate_config(cfg);
  const Layout l = layout(cfg);
  ModelParams p;
  p.cfg = cfg;
  p.names = l.names;
  gen::Rng rng(gen::derive_seed(cfg.seed, 0x1417));
  for (std::size_t t = 0; t < l.names.size(); ++t) {
    const auto [r, c] = l.shapes[t];
    Mat m(r, c);
    // U(-a, a) with a = 1/sqrt(fan_in); vectors use the width as fan-in.
    const double a = 1.0 / std::sqrt(static_cast<double>(l.init[t] == Init::kVector ? c : r));
    // Column-major fill order is part of the seeded contract.
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        switch (l.init[t]) {
          case Init::kWeight:
          case Init::kVector: m(i, j) = rng.uniform(-a, a); break;
          case Init::kZero: m(i, j) = 0.0; break;
          case Init::kOne: m(i, j) = 1.0; break;
        }
      }
    }
    p.tensors.push_back(std::move(m));
  }
  return p;
}

GraphInput prepare_graph(const graph::BipartiteGraph& g) {
  expects(g.var_feats.rows() == g.n && g.var_feats.cols() == graph::kVarFeatures &&
              g.cons_feats.rows() == g.m && g.cons_feats.cols() == graph::kConsFeatures,
          ErrorKind::kShapeMismatch, "graph feature matrices do not match n / m");
  expects(g.n > 0 && g.m > 0, ErrorKind::kShapeMismatch, "graph needs variables and constraints");
  GraphInput in;
  in.n = g.n;
  in.m = g.m;
  in.var_feats = g.var_feats;
  in.cons_feats = g.cons_feats;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(g.edges.size());
  in.row_edge_sum = Mat::Zero(g.m, 1);
  in.row_degree = Mat::Zero(g.m, 1);
  in.col_edge_sum = Mat::Zero(g.n, 1);
  in.col_degree = Mat::Zero(g.n, 1);
  for (const auto& e : g.edges) {
    expects(e.cons >= 0 && e.cons < g.m && e.var >= 0 && e.var < g.n, ErrorKind::kShapeMismatch,
            "edge endpoint out of range");
    trip.emplace_back(e.cons, e.var, 1.0);
    in.row_edge_sum(e.cons, 0) += e.feat;
    in.row_degree(e.cons, 0) += 1.0;
    in.col_edge_sum(e.var, 0) += e.feat;
    in.col_degree(e.var, 0) += 1.0;
  }
  auto rc = std::make_shared<SpMat>(g.m, g.n);
  rc->setFromTriplets(trip.begin(), trip.end());
  auto cr = std::make_shared<SpMat>(rc->transpose());
  in.rows_by_cols = std::move(rc);
  in.cols_by_rows = std::move(cr);
  return in;
}

namespace {

class Builder {
 public:
  Builder(Tape& t, const ModelParams& p) : t_(t), p_(p), ids_(p.tensors.size(), -1) {}

  Tape::Id operator()(const std::string& name) {
    const int i = p_.index_of(name);
    expects(i >= 0, ErrorKind::kShapeMismatch, "missing parameter " + name);
    auto& id = ids_[static_cast<std::size_t>(i)];
    if (id < 0) id = t_.leaf(i, p_.tensors[static_cast<std::size_t>(i)]);
    return id;
  }

  Tape::Id linear(Tape::Id x, const std::string& w, const std::string& b) {
    return t_.add_row(t_.matmul(x, (*this)(w)), (*this)(b));
  }

 private:
  Tape& t_;
  const ModelParams& p_;
  std::vector<Tape::Id> ids_;
};

std::vector<int> select_nodes(int total, int want, std::uint64_t seed, NodeSelection sel) {
  std::vector<int> idx;
  if (sel == NodeSelection::kAllNodes) {
    idx.resize(static_cast<std::size_t>(total));
    for (int i = 0; i < total; ++i) idx[static_cast<std::size_t>(i)] = i;
    return idx;
  }
  gen::Rng rng(seed);
  if (total >= want) return rng.sample(total, want);
  idx.reserve(static_cast<std::size_t>(want));
  for (int k = 0; k < want; ++k) idx.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(total))));
  return idx;
}

}  // namespace

Tape::Id forward(Tape& t, const ModelParams& params, const GraphInput& g,
                 std::uint64_t sample_seed, NodeSelection selection) {
  const ModelConfig& cfg = params.cfg;
  expects(g.var_feats.cols() == graph::kVarFeatures && g.cons_feats.cols() == graph::kConsFeatures &&
              g.var_feats.rows() == g.n && g.cons_feats.rows() == g.m,
          ErrorKind::kShapeMismatch, "graph input shapes");
  Builder P(t, params);

  Tape::Id v = P.linear(t.relu(P.linear(t.constant(g.var_feats), "var_mlp.w1", "var_mlp.b1")),
                        "var_mlp.w2", "var_mlp.b2");
  Tape::Id c = P.linear(t.relu(P.linear(t.constant(g.cons_feats), "cons_mlp.w1", "cons_mlp.b1")),
                        "cons_mlp.w2", "cons_mlp.b2");
  Tape::Id s = P("summary.init");

  // Edge projection E(a) = a * edge.w + edge.b, summed over each node's edges;
  // the summary link carries E(1).
  const Tape::Id ew = P("edge.w");
  const Tape::Id eb = P("edge.b");
  const Tape::Id row_edges =
      t.add(t.matmul(t.constant(g.row_edge_sum), ew), t.matmul(t.constant(g.row_degree), eb));
  const Tape::Id col_edges =
      t.add(t.matmul(t.constant(g.col_edge_sum), ew), t.matmul(t.constant(g.col_degree), eb));
  const Tape::Id summary_edge = t.add(ew, eb);

  for (int k = 0; k < cfg.gcn_layers; ++k) {
    const std::string p = "conv" + std::to_string(k) + ".";
    // variables -> constraints (and summary)
    Tape::Id agg = t.add(t.spmm(g.rows_by_cols, v), row_edges);
    agg = t.add_row(agg, t.add(s, summary_edge));
    const Tape::Id c_new = t.add(c, t.relu(P.linear(agg, p + "row_w", p + "row_b")));
    s = t.add(s, t.relu(P.linear(t.mean_rows(v), p + "sum_var_w", p + "sum_var_b")));
    c = c_new;
    // constraints -> variables (and summary)
    agg = t.add(t.spmm(g.cols_by_rows, c), col_edges);
    agg = t.add_row(agg, t.add(s, summary_edge));
    const Tape::Id v_new = t.add(v, t.relu(P.linear(agg, p + "col_w", p + "col_b")));
    s = t.add(s, t.relu(P.linear(t.mean_rows(c), p + "sum_cons_w", p + "sum_cons_b")));
    v = v_new;
  }

  const Tape::Id nodes = t.concat_rows({v, c});
  const auto idx = select_nodes(g.n + g.m, cfg.sampled_nodes, sample_seed, selection);
  Tape::Id x = t.concat_rows({t.gather_rows(nodes, idx), t.mean_rows(v), t.mean_rows(c), s});

  const int e = cfg.emb_size;
  const int heads = cfg.attn_heads;
  const int dh = e / heads;
  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(dh));
  for (int k = 0; k < cfg.attn_layers; ++k) {
    const std::string p = "attn" + std::to_string(k) + ".";
    const Tape::Id h = t.layer_norm(x, P(p + "ln1_g"), P(p + "ln1_b"));
    const Tape::Id qkv = P.linear(h, p + "qkv_w", p + "qkv_b");
    std::vector<Tape::Id> outs;
    outs.reserve(static_cast<std::size_t>(heads));
    for (int hd = 0; hd < heads; ++hd) {
      const Tape::Id q = t.col_block(qkv, hd * dh, dh);
      const Tape::Id kk = t.col_block(qkv, e + hd * dh, dh);
      const Tape::Id vv = t.col_block(qkv, 2 * e + hd * dh, dh);
      const Tape::Id att = t.softmax_rows(t.scale(t.matmul_nt(q, kk), inv_sqrt));
      outs.push_back(t.matmul(att, vv));
    }
    x = t.add(x, P.linear(t.concat_cols(outs), p + "out_w", p + "out_b"));
    const Tape::Id h2 = t.layer_norm(x, P(p + "ln2_g"), P(p + "ln2_b"));
    x = t.add(x, P.linear(t.relu(P.linear(h2, p + "ff1_w", p + "ff1_b")), p + "ff2_w", p + "ff2_b"));
  }
  return t.l2_normalize_rows(P.linear(t.mean_rows(x), "head.w", "head.b"));
}

Eigen::VectorXd encode_milp(const ModelParams& params, const GraphInput& g,
                            std::uint64_t sample_seed, NodeSelection selection) {
  Tape t(false);
  const Tape::Id out = forward(t, params, g, sample_seed, selection);
  return t.value(out).row(0).transpose();
}

Eigen::VectorXd encode_milp(const ModelParams& params, const graph::BipartiteGraph& g,
                            std::uint64_t sample_seed, NodeSelection selection) {
  return encode_milp(params, prepare_graph(g), sample_seed, selection);
}

}  // namespace milpret::embed
