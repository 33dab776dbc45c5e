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

#include "milpret/retrieval/retrieve.hpp"

#include <algorithm>
#include <cmath>

#include "milpret/core/error.hpp"
#include "milpret/generators/rng.hpp"
#include "milpret/sim/similarity.hpp"

namespace milpret::retrieval {

RetrievalResult retrieve_embedding(const Library& lib, const Eigen::VectorXd& target) {
  expects(!lib.entries.empty(), ErrorKind::kEmptyLibrary, "cannot retrieve from an empty library");
  expects(target.size() == lib.dim, ErrorKind::kShapeMismatch,
          "target embedding dimension does not match the library");
  RetrievalResult best;
  bool have = false;
  for (std::size_t e = 0; e < lib.entries.size(); ++e) {
    const auto& entry = lib.entries[e];
    for (std::size_t i = 0; i < entry.embeddings.size(); ++i) {
      const double s = std::clamp(entry.embeddings[i].cast<double>().dot(target), -1.0, 1.0);
      const bool better = !have || s > best.score ||
                          (s == best.score && entry.class_id < best.class_id);
      if (!better) continue;
      have = true;
      best.class_id = entry.class_id;
      best.score = s;
      best.entry_index = e;
      best.instance_index = i;
    }
  }
  expects(have, ErrorKind::kEmptyLibrary, "library holds no embeddings");
  best.generator = lib.entries[best.entry_index].generator;
  return best;
}

RetrievalResult retrieve(const Library& lib, const embed::ModelParams& params,
                         const MilpInstance& target, const RetrieveOptions& opts) {
  expects(!lib.entries.empty(), ErrorKind::kEmptyLibrary, "cannot retrieve from an empty library");
  expects(params.cfg.out_dim == lib.dim, ErrorKind::kShapeMismatch,
          "model output dimension does not match the library");
  return retrieve_embedding(lib, sim::embed_instance(params, target, opts.sample_seed, opts.features));
}

GenerationResult retrieve_and_generate(const Library& lib, const embed::ModelParams& params,
                                       const MilpInstance& target, int m,
                                       const GenerateOptions& opts) {
  expects(m >= 1, ErrorKind::kInvalidParams, "m must be at least 1");
  GenerationResult out;
  out.retrieved = retrieve(lib, params, target, opts.retrieve);
  const std::string& id = out.retrieved.class_id;
  out.params = out.retrieved.generator.params;

  if (opts.scale_to_target) {
    const int runs = std::max(1, opts.calibration_runs);
    std::vector<double> sizes;
    for (int k = 0; k < runs; ++k) {
      const auto spec = gen::make_spec(id, out.params, gen::derive_seed(opts.seed, 0xca11b000u + k));
      sizes.push_back(static_cast<double>(gen::generate_instance(spec).num_vars()));
    }
    std::sort(sizes.begin(), sizes.end());
    const double median = runs % 2 ? sizes[runs / 2] : 0.5 * (sizes[runs / 2 - 1] + sizes[runs / 2]);
    const double ratio = static_cast<double>(target.num_vars()) / median;
    const double factor = std::pow(ratio, 1.0 / gen::require_class(id).size_exponent);
    try {
      out.params = gen::scale_params(id, out.params, factor);
      out.scale_factor = factor;
    } catch (const Error& ex) {
      if (ex.kind() != ErrorKind::kInvalidParams) throw;
      if (opts.warnings) {
        opts.warnings->push_back("scale_to_target ignored: " + std::string(ex.what()));
      }
    }
  }

  out.instances.reserve(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    out.instances.push_back(
        gen::generate_instance(gen::make_spec(id, out.params, gen::derive_seed(opts.seed, k))));
  }
  return out;
}

}  // namespace milpret::retrieval
