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

#include "milpret/embed/train.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <thread>

#include "milpret/core/error.hpp"
#include "milpret/generators/rng.hpp"

namespace milpret::embed {

namespace {

constexpr int kGradChunk = 4;

void add_into(std::vector<Mat>& dst, std::vector<Mat>& src) {
  for (std::size_t t = 0; t < dst.size(); ++t) {
    if (src[t].size() == 0) continue;
    if (dst[t].size() == 0) {
      dst[t] = std::move(src[t]);
    } else {
      dst[t] += src[t];
    }
    src[t] = Mat();
  }
}

}  // namespace

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  const int workers = std::min(resolve_threads(threads), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  std::mutex err_mu;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count && !failed; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!err) err = std::current_exception();
          failed = true;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

Mat encode_all(const ModelParams& params, const std::vector<TrainingPair>& pairs,
               std::uint64_t sample_seed, int threads) {
  Mat out(static_cast<Eigen::Index>(pairs.size()), params.cfg.out_dim);
  parallel_for(static_cast<int>(pairs.size()), threads, [&](int i) {
    out.row(i) = encode_milp(params, pairs[static_cast<std::size_t>(i)].graph, sample_seed).transpose();
  });
  return out;
}

Mat text_matrix(const std::vector<TrainingPair>& pairs) {
  const Eigen::Index d = pairs.empty() ? 0 : pairs[0].text.size();
  Mat t(static_cast<Eigen::Index>(pairs.size()), d);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    expects(pairs[i].text.size() == d, ErrorKind::kShapeMismatch, "text vectors differ in size");
    t.row(static_cast<Eigen::Index>(i)) = pairs[i].text.transpose();
  }
  return t;
}

double batch_gradient(const ModelParams& params, const std::vector<TrainingPair>& pairs,
                      const std::vector<int>& idx, const std::vector<std::uint64_t>& seeds,
                      std::vector<Mat>* grads, int threads) {
  expects(idx.size() == seeds.size(), ErrorKind::kShapeMismatch, "one sample seed per pair");
  const int b = static_cast<int>(idx.size());
  const int d = params.cfg.out_dim;
  Mat P(b, d), T(b, d);
  for (int k = 0; k < b; ++k) {
    const auto& text = pairs[static_cast<std::size_t>(idx[k])].text;
    expects(text.size() == d, ErrorKind::kShapeMismatch, "text vector size differs from out_dim");
    T.row(k) = text.transpose();
  }
  parallel_for(b, threads, [&](int k) {
    P.row(k) = encode_milp(params, pairs[static_cast<std::size_t>(idx[k])].graph, seeds[k]).transpose();
  });
  const LossResult loss = contrastive_loss(P, T, params.cfg.temperature);
  if (!grads) return loss.value;

  // Second pass with recording tapes, one pair at a time, so only one tape
  // per worker is alive.
  const int chunks = (b + kGradChunk - 1) / kGradChunk;
  std::vector<std::vector<Mat>> partial(static_cast<std::size_t>(chunks),
                                        std::vector<Mat>(params.tensors.size()));
  parallel_for(chunks, threads, [&](int c) {
    auto& acc = partial[static_cast<std::size_t>(c)];
    for (int k = c * kGradChunk; k < std::min(b, (c + 1) * kGradChunk); ++k) {
      Tape tape;
      const Tape::Id out =
          forward(tape, params, pairs[static_cast<std::size_t>(idx[k])].graph, seeds[k]);
      tape.backward(out, loss.grad_p.row(k), acc);
    }
  });
  grads->assign(params.tensors.size(), Mat());
  for (auto& part : partial) add_into(*grads, part);
  for (std::size_t t = 0; t < grads->size(); ++t) {
    if ((*grads)[t].size() == 0) (*grads)[t] = Mat::Zero(params.tensors[t].rows(), params.tensors[t].cols());
  }
  return loss.value;
}

Adam::Adam(const ModelParams& params) {
  for (const auto& t : params.tensors) {
    m_.push_back(Mat::Zero(t.rows(), t.cols()));
    v_.push_back(Mat::Zero(t.rows(), t.cols()));
  }
}

void Adam::step(ModelParams& params, const std::vector<Mat>& grads, double lr) {
  expects(grads.size() == params.tensors.size(), ErrorKind::kShapeMismatch, "gradient count");
  ++t_;
  const double c1 = 1.0 - std::pow(kBeta1, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(kBeta2, static_cast<double>(t_));
  for (std::size_t i = 0; i < grads.size(); ++i) {
    m_[i] = kBeta1 * m_[i] + (1.0 - kBeta1) * grads[i];
    v_[i] = kBeta2 * v_[i] + (1.0 - kBeta2) * grads[i].cwiseProduct(grads[i]);
    if (lr == 0.0) continue;
    params.tensors[i].array() -=
        lr * (m_[i].array() / c1) / ((v_[i].array() / c2).sqrt() + kEps);
  }
}

TrainResult train(ModelParams params, const std::vector<TrainingPair>& train_set,
                  const std::vector<TrainingPair>& val_set, const TrainOptions& opts) {
  validate_config(params.cfg);
  const ModelConfig cfg = params.cfg;
  const int n = static_cast<int>(train_set.size());
  if (n < 2) fail(ErrorKind::kDegenerateBatch, "training needs at least 2 pairs");
  int batch = cfg.batch_size;
  if (n < 2 * batch) batch = std::max(2, std::min(batch, n / 2));

  Adam adam(params);
  TrainResult result;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  Mat val_text;
  if (!val_set.empty()) val_text = text_matrix(val_set);
  long step = 0;
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    gen::Rng rng(gen::derive_seed(cfg.seed, 0xe90c0000ULL + static_cast<std::uint64_t>(epoch)));
    const auto order = rng.permutation(n);
    std::vector<std::pair<int, int>> batches;  // [begin, end)
    for (int s = 0; s < n; s += batch) batches.emplace_back(s, std::min(n, s + batch));
    if (batches.size() > 1 && batches.back().second - batches.back().first < 2) {
      batches[batches.size() - 2].second = batches.back().second;
      batches.pop_back();
    }
    double loss_sum = 0.0;
    for (const auto& [lo, hi] : batches) {
      std::vector<int> idx(order.begin() + lo, order.begin() + hi);
      std::vector<std::uint64_t> seeds;
      seeds.reserve(idx.size());
      for (int i : idx) {
        seeds.push_back(gen::derive_seed(cfg.seed, (static_cast<std::uint64_t>(epoch) << 32) |
                                                       static_cast<std::uint64_t>(i)));
      }
      std::vector<Mat> grads;
      const double loss = batch_gradient(params, train_set, idx, seeds, &grads, opts.threads);
      loss_sum += loss * static_cast<double>(idx.size());
      double lr = cfg.lr;
      if (opts.lr_schedule == LrSchedule::kCosine) {
        const double total = static_cast<double>(cfg.epochs) * static_cast<double>(batches.size());
        lr *= 0.5 * (1.0 + std::cos(std::numbers::pi * static_cast<double>(step) / total));
      }
      ++step;
      adam.step(params, grads, lr);
    }
    EpochRecord rec;
    rec.epoch = epoch;
    rec.train_loss = loss_sum / static_cast<double>(n);
    rec.val4 = {nan, nan};
    rec.val10 = {nan, nan};
    if (!val_set.empty()) {
      const Mat vp = encode_all(params, val_set, opts.eval_seed, opts.threads);
      const int nv = static_cast<int>(val_set.size());
      if (nv >= 4) rec.val4 = kway_accuracy(vp, val_text, 4, opts.kway_trials, opts.eval_seed + 4);
      if (nv >= 10) rec.val10 = kway_accuracy(vp, val_text, 10, opts.kway_trials, opts.eval_seed + 10);
    }
    result.history.push_back(rec);
    if (opts.on_epoch) opts.on_epoch(rec);
  }
  result.params = std::move(params);
  return result;
}

Split stratified_split(const std::vector<std::string>& class_ids, double ratio, std::uint64_t seed) {
  expects(ratio > 0.0 && ratio < 1.0, ErrorKind::kInvalidConfig, "split ratio must lie in (0, 1)");
  std::map<std::string, std::vector<int>> groups;
  for (std::size_t i = 0; i < class_ids.size(); ++i) groups[class_ids[i]].push_back(static_cast<int>(i));
  Split s;
  std::uint64_t stream = 0;
  for (auto& [cls, members] : groups) {
    gen::Rng rng(gen::derive_seed(seed, 0x5b1700ULL + stream++));
    rng.shuffle(std::span<int>(members));
    const int size = static_cast<int>(members.size());
    int n_train = static_cast<int>(std::lround(ratio * size));
    n_train = std::clamp(n_train, 1, size >= 2 ? size - 1 : 1);
    for (int k = 0; k < size; ++k) (k < n_train ? s.train : s.val).push_back(members[static_cast<std::size_t>(k)]);
  }
  std::sort(s.train.begin(), s.train.end());
  std::sort(s.val.begin(), s.val.end());
  return s;
}

}  // namespace milpret::embed
