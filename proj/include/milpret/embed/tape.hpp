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

// Minimal reverse-mode differentiation over dense double matrices.
//
// Every op appends a node holding its value and a closure that pushes the
// node's gradient to its inputs. Constants never receive gradients; leaves
// created with leaf() report theirs to a caller-owned gradient array.

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <functional>
#include <memory>
#include <vector>

namespace milpret::embed {

using Mat = Eigen::MatrixXd;
using SpMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;

class Tape {
 public:
  using Id = int;

  // With record_grad = false leaves behave like constants (inference).
  explicit Tape(bool record_grad = true) : record_grad_(record_grad) {}

  Id constant(Mat v);
  Id leaf(int param_index, const Mat& v);
  const Mat& value(Id id) const { return nodes_[static_cast<std::size_t>(id)].value; }
  std::size_t size() const { return nodes_.size(); }

  Id matmul(Id a, Id b);     // A * B
  Id matmul_nt(Id a, Id b);  // A * B^T
  Id add(Id a, Id b);
  Id add_row(Id a, Id row);  // row (1 x c) broadcast over A's rows
  Id scale(Id a, double s);
  Id relu(Id a);
  // Constant sparse left factor; the matrix must outlive backward().
  Id spmm(std::shared_ptr<const SpMat> s, Id x);
  Id mean_rows(Id a);  // 1 x c
  Id gather_rows(Id a, std::vector<int> idx);
  Id concat_rows(const std::vector<Id>& parts);
  Id concat_cols(const std::vector<Id>& parts);
  Id col_block(Id a, int start, int width);
  Id softmax_rows(Id a);
  Id layer_norm(Id x, Id gain, Id bias, double eps = 1e-5);
  Id l2_normalize_rows(Id a);

  // Seeds d(out) with `seed` and adds leaf gradients into grads[param_index].
  void backward(Id out, const Mat& seed, std::vector<Mat>& grads);

 private:
  using Back = std::function<void(Tape&, const Mat&)>;
  struct Node {
    Mat value;
    Mat grad;
    bool needs_grad = false;
    int param_index = -1;
    Back back;
  };

  Id push(Mat value, bool needs_grad, Back back);
  bool needs(Id id) const { return nodes_[static_cast<std::size_t>(id)].needs_grad; }
  void accumulate(Id id, const Mat& g);

  bool record_grad_ = true;
  std::vector<Node> nodes_;
};

}  // namespace milpret::embed
