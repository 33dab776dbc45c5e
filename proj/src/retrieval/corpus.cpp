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

#include "milpret/retrieval/corpus.hpp"

#include "milpret/generators/rng.hpp"

namespace milpret::retrieval {

std::uint64_t instance_seed(std::uint64_t seed, const std::string& class_id, int i) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char ch : class_id) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ULL;
  }
  return gen::derive_seed(seed, h + static_cast<std::uint64_t>(i));
}

std::vector<CorpusItem> build_corpus(const std::vector<std::string>& class_ids,
                                     const CorpusOptions& opts) {
  struct Job {
    std::string id;
    int i;
  };
  std::vector<Job> jobs;
  for (const auto& id : class_ids) {
    gen::require_class(id);
    for (int i = 0; i < opts.per_class; ++i) jobs.push_back({id, i});
  }
  std::vector<CorpusItem> items(jobs.size());
  embed::parallel_for(static_cast<int>(jobs.size()), opts.threads, [&](int k) {
    const Job& job = jobs[static_cast<std::size_t>(k)];
    const gen::ClassDef& cls = gen::require_class(job.id);
    const std::uint64_t s = instance_seed(opts.seed, job.id, job.i);
    gen::Params params = opts.toy_params ? cls.toy : cls.defaults;
    if (opts.jitter) params = gen::jitter_params(job.id, params, s);
    CorpusItem& item = items[static_cast<std::size_t>(k)];
    item.spec = gen::make_spec(job.id, params, s);
    item.instance = gen::generate_instance(item.spec);
    item.graph = graph::featurize(item.instance, opts.features);
  });
  return items;
}

std::vector<embed::TrainingPair> make_pairs(const std::vector<CorpusItem>& items,
                                            const embed::TextEmbedder& text) {
  std::vector<embed::TrainingPair> pairs;
  pairs.reserve(items.size());
  for (const auto& item : items) {
    embed::TrainingPair p;
    p.graph = embed::prepare_graph(item.graph);
    p.text = text.encode(item.spec.description);
    p.class_id = item.spec.class_id;
    p.label = item.spec.class_id + "_" + std::to_string(item.spec.seed);
    pairs.push_back(std::move(p));
  }
  return pairs;
}

}  // namespace milpret::retrieval
