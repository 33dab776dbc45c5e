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

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "milpret/embed/loss.hpp"
#include "milpret/embed/model.hpp"

namespace milpret::embed {

struct TrainingPair {
  GraphInput graph;
  Eigen::VectorXd text;  // unit norm, out_dim entries
  std::string class_id;
  std::string label;
};

// Encodes every pair's graph with one shared sample seed (rows of the result).
Mat encode_all(const ModelParams& params, const std::vector<TrainingPair>& pairs,
               std::uint64_t sample_seed, int threads = 0);
Mat text_matrix(const std::vector<TrainingPair>& pairs);

// Loss of the batch `idx` and, when `grads` is given, its gradient with
// respect to every tensor. seeds[k] is the sample seed of pairs[idx[k]].
// Per-pair gradients are summed in fixed chunks of 4 and the chunks in
// order, so the result does not depend on `threads`.
double batch_gradient(const ModelParams& params, const std::vector<TrainingPair>& pairs,
                      const std::vector<int>& idx, const std::vector<std::uint64_t>& seeds,
                      std::vector<Mat>* grads, int threads = 0);

class Adam {
 public:
  static constexpr double kBeta1 = 0.9;
  static constexpr double kBeta2 = 0.999;
  static constexpr double kEps = 1e-8;

  explicit Adam(const ModelParams& params);
  void step(ModelParams& params, const std::vector<Mat>& grads, double lr);
  long steps() const { return t_; }

 private:
  std::vector<Mat> m_;
  std::vector<Mat> v_;
  long t_ = 0;
};

struct EpochRecord {
  int epoch = 0;  // 1-based
  double train_loss = 0.0;
  // Validation k-way accuracies; NaN when the split is too small for k.
  KwayAccuracy val4;
  KwayAccuracy val10;
};

enum class LrSchedule {
  kConstant,
  kCosine,  // lr * (1 + cos(pi * step / total_steps)) / 2
};

struct TrainOptions {
  int threads = 0;  // 0: hardware concurrency
  LrSchedule lr_schedule = LrSchedule::kConstant;
  int kway_trials = 200;
  std::uint64_t eval_seed = 20240917;
  std::function<void(const EpochRecord&)> on_epoch;
};

struct TrainResult {
  ModelParams params;
  std::vector<EpochRecord> history;
};

// Mini-batch Adam on the symmetric contrastive loss. The batch size shrinks
// to max(2, |train| / 2) when the set is smaller than two batches; a trailing
// batch of one pair is merged into the previous batch.
TrainResult train(ModelParams params, const std::vector<TrainingPair>& train_set,
                  const std::vector<TrainingPair>& val_set, const TrainOptions& opts = {});

struct Split {
  std::vector<int> train;
  std::vector<int> val;
};

// Stratified by class: each class keeps round(ratio * size) members for
// training (at least one, and one for validation when it has two or more).
Split stratified_split(const std::vector<std::string>& class_ids, double ratio, std::uint64_t seed);

int resolve_threads(int threads);
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

}  // namespace milpret::embed
