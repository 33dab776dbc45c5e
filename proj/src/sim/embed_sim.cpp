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

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "milpret/core/error.hpp"
#include "milpret/embed/train.hpp"
#include "milpret/sim/similarity.hpp"

namespace milpret::sim {

Eigen::VectorXd embed_instance(const embed::ModelParams& params, const MilpInstance& inst,
                               std::uint64_t sample_seed, const graph::FeaturizeOptions& features) {
  return embed::encode_milp(params, graph::featurize(inst, features), sample_seed);
}

double cosine(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  expects(a.size() == b.size(), ErrorKind::kShapeMismatch, "embedding sizes differ");
  return std::clamp(a.dot(b), -1.0, 1.0);
}

double embed_sim(const embed::ModelParams& params, const MilpInstance& p, const MilpInstance& q,
                 std::uint64_t sample_seed, const graph::FeaturizeOptions& features) {
  return cosine(embed_instance(params, p, sample_seed, features),
                embed_instance(params, q, sample_seed, features));
}

SimMatrix sim_matrix_from_embeddings(std::vector<std::string> labels, const Eigen::MatrixXd& e) {
  expects(static_cast<Eigen::Index>(labels.size()) == e.rows(), ErrorKind::kShapeMismatch,
          "one label per embedding");
  SimMatrix m;
  m.labels = std::move(labels);
  const auto k = e.rows();
  m.values.resize(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i; j < k; ++j) {
      const double v = cosine(e.row(i).transpose(), e.row(j).transpose());
      m.values(i, j) = v;
      m.values(j, i) = v;
    }
  }
  return m;
}

SimMatrix sim_matrix(const embed::ModelParams& params, const std::vector<MilpInstance>& instances,
                     std::vector<std::string> labels, std::uint64_t sample_seed,
                     const graph::FeaturizeOptions& features, int threads) {
  expects(labels.size() == instances.size(), ErrorKind::kShapeMismatch, "one label per instance");
  Eigen::MatrixXd e(static_cast<Eigen::Index>(instances.size()), params.cfg.out_dim);
  embed::parallel_for(static_cast<int>(instances.size()), threads, [&](int i) {
    e.row(i) = embed_instance(params, instances[static_cast<std::size_t>(i)], sample_seed, features)
                   .transpose();
  });
  return sim_matrix_from_embeddings(std::move(labels), e);
}

std::string to_csv(const SimMatrix& m) {
  std::string out = "id";
  for (const auto& l : m.labels) out += "," + l;
  out += '\n';
  char buf[32];
  for (std::size_t i = 0; i < m.labels.size(); ++i) {
    out += m.labels[i];
    for (std::size_t j = 0; j < m.labels.size(); ++j) {
      std::snprintf(buf, sizeof(buf), ",%.9f", m.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
      out += buf;
    }
    out += '\n';
  }
  return out;
}

void write_csv(const SimMatrix& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::kIo, "cannot write " + path.string());
  out << to_csv(m);
}

}  // namespace milpret::sim
