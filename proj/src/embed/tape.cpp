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

#include "milpret/embed/tape.hpp"

#include <cmath>

#include "milpret/core/error.hpp"

namespace milpret::embed {

Tape::Id Tape::push(Mat value, bool needs_grad, Back back) {
  Node n;
  n.value = std::move(value);
  n.needs_grad = needs_grad;
  if (needs_grad) n.back = std::move(back);
  nodes_.push_back(std::move(n));
  return static_cast<Id>(nodes_.size() - 1);
}

void Tape::accumulate(Id id, const Mat& g) {
  Node& n = nodes_[static_cast<std::size_t>(id)];
  if (!n.needs_grad) return;
  if (n.grad.size() == 0) {
    n.grad = g;
  } else {
    n.grad += g;
  }
}

Tape::Id Tape::constant(Mat v) { return push(std::move(v), false, nullptr); }

Tape::Id Tape::leaf(int param_index, const Mat& v) {
  const Id id = push(v, record_grad_, nullptr);
  if (record_grad_) nodes_.back().param_index = param_index;
  return id;
}

Tape::Id Tape::matmul(Id a, Id b) {
  expects(value(a).cols() == value(b).rows(), ErrorKind::kShapeMismatch, "matmul shapes");
  return push(value(a) * value(b), needs(a) || needs(b), [a, b](Tape& t, const Mat& g) {
    if (t.needs(a)) t.accumulate(a, g * t.value(b).transpose());
    if (t.needs(b)) t.accumulate(b, t.value(a).transpose() * g);
  });
}

Tape::Id Tape::matmul_nt(Id a, Id b) {
  expects(value(a).cols() == value(b).cols(), ErrorKind::kShapeMismatch, "matmul_nt shapes");
  return push(value(a) * value(b).transpose(), needs(a) || needs(b),
              [a, b](Tape& t, const Mat& g) {
                if (t.needs(a)) t.accumulate(a, g * t.value(b));
                if (t.needs(b)) t.accumulate(b, g.transpose() * t.value(a));
              });
}

Tape::Id Tape::add(Id a, Id b) {
  expects(value(a).rows() == value(b).rows() && value(a).cols() == value(b).cols(),
          ErrorKind::kShapeMismatch, "add shapes");
  return push(value(a) + value(b), needs(a) || needs(b), [a, b](Tape& t, const Mat& g) {
    t.accumulate(a, g);
    t.accumulate(b, g);
  });
}

Tape::Id Tape::add_row(Id a, Id r) {
  expects(value(r).rows() == 1 && value(r).cols() == value(a).cols(), ErrorKind::kShapeMismatch,
          "add_row shapes");
  Mat v = value(a);
  v.rowwise() += value(r).row(0);
  return push(std::move(v), needs(a) || needs(r), [a, r](Tape& t, const Mat& g) {
    t.accumulate(a, g);
    if (t.needs(r)) t.accumulate(r, g.colwise().sum());
  });
}

Tape::Id Tape::scale(Id a, double s) {
  return push(value(a) * s, needs(a), [a, s](Tape& t, const Mat& g) { t.accumulate(a, g * s); });
}

Tape::Id Tape::relu(Id a) {
  return push(value(a).cwiseMax(0.0), needs(a), [a](Tape& t, const Mat& g) {
    t.accumulate(a, (t.value(a).array() > 0.0).select(g, 0.0));
  });
}

Tape::Id Tape::spmm(std::shared_ptr<const SpMat> s, Id x) {
  expects(s->cols() == value(x).rows(), ErrorKind::kShapeMismatch, "spmm shapes");
  Mat v = (*s) * value(x);
  return push(std::move(v), needs(x), [s, x](Tape& t, const Mat& g) {
    t.accumulate(x, s->transpose() * g);
  });
}

Tape::Id Tape::mean_rows(Id a) {
  const auto r = static_cast<double>(value(a).rows());
  expects(r > 0, ErrorKind::kShapeMismatch, "mean over zero rows");
  return push(value(a).colwise().mean(), needs(a), [a, r](Tape& t, const Mat& g) {
    t.accumulate(a, (g / r).replicate(t.value(a).rows(), 1));
  });
}

Tape::Id Tape::gather_rows(Id a, std::vector<int> idx) {
  const Mat& src = value(a);
  Mat v(static_cast<Eigen::Index>(idx.size()), src.cols());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    expects(idx[k] >= 0 && idx[k] < src.rows(), ErrorKind::kShapeMismatch, "gather index");
    v.row(static_cast<Eigen::Index>(k)) = src.row(idx[k]);
  }
  return push(std::move(v), needs(a), [a, idx = std::move(idx)](Tape& t, const Mat& g) {
    Mat d = Mat::Zero(t.value(a).rows(), t.value(a).cols());
    for (std::size_t k = 0; k < idx.size(); ++k) d.row(idx[k]) += g.row(static_cast<Eigen::Index>(k));
    t.accumulate(a, d);
  });
}

Tape::Id Tape::concat_rows(const std::vector<Id>& parts) {
  Eigen::Index rows = 0;
  const Eigen::Index cols = value(parts.at(0)).cols();
  bool any = false;
  for (Id p : parts) {
    expects(value(p).cols() == cols, ErrorKind::kShapeMismatch, "concat_rows widths");
    rows += value(p).rows();
    any = any || needs(p);
  }
  Mat v(rows, cols);
  Eigen::Index at = 0;
  for (Id p : parts) {
    v.middleRows(at, value(p).rows()) = value(p);
    at += value(p).rows();
  }
  return push(std::move(v), any, [parts](Tape& t, const Mat& g) {
    Eigen::Index off = 0;
    for (Id p : parts) {
      const auto r = t.value(p).rows();
      if (t.needs(p)) t.accumulate(p, g.middleRows(off, r));
      off += r;
    }
  });
}

Tape::Id Tape::concat_cols(const std::vector<Id>& parts) {
  const Eigen::Index rows = value(parts.at(0)).rows();
  Eigen::Index cols = 0;
  bool any = false;
  for (Id p : parts) {
    expects(value(p).rows() == rows, ErrorKind::kShapeMismatch, "concat_cols heights");
    cols += value(p).cols();
    any = any || needs(p);
  }
  Mat v(rows, cols);
  Eigen::Index at = 0;
  for (Id p : parts) {
    v.middleCols(at, value(p).cols()) = value(p);
    at += value(p).cols();
  }
  return push(std::move(v), any, [parts](Tape& t, const Mat& g) {
    Eigen::Index off = 0;
    for (Id p : parts) {
      const auto c = t.value(p).cols();
      if (t.needs(p)) t.accumulate(p, g.middleCols(off, c));
      off += c;
    }
  });
}

Tape::Id Tape::col_block(Id a, int start, int width) {
  expects(start >= 0 && width >= 0 && start + width <= value(a).cols(), ErrorKind::kShapeMismatch,
          "col_block range");
  return push(value(a).middleCols(start, width), needs(a), [a, start, width](Tape& t, const Mat& g) {
    Mat d = Mat::Zero(t.value(a).rows(), t.value(a).cols());
    d.middleCols(start, width) = g;
    t.accumulate(a, d);
  });
}

Tape::Id Tape::softmax_rows(Id a) {
  const Mat& x = value(a);
  Mat y(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double mx = x.row(i).maxCoeff();
    y.row(i) = (x.row(i).array() - mx).exp();
    y.row(i) /= y.row(i).sum();
  }
  const Id out = push(std::move(y), needs(a), nullptr);
  if (needs(a)) {
    nodes_.back().back = [a, out](Tape& t, const Mat& g) {
      const Mat& yv = t.value(out);
      const Eigen::VectorXd dot = (g.array() * yv.array()).rowwise().sum();
      Mat d = yv.array() * (g.array().colwise() - dot.array());
      t.accumulate(a, d);
    };
  }
  return out;
}

Tape::Id Tape::layer_norm(Id x, Id gain, Id bias, double eps) {
  const Mat& xv = value(x);
  const auto c = xv.cols();
  expects(value(gain).rows() == 1 && value(gain).cols() == c && value(bias).rows() == 1 &&
              value(bias).cols() == c,
          ErrorKind::kShapeMismatch, "layer_norm shapes");
  Mat xhat(xv.rows(), c);
  Eigen::VectorXd inv_std(xv.rows());
  for (Eigen::Index i = 0; i < xv.rows(); ++i) {
    const double mu = xv.row(i).mean();
    const double var = (xv.row(i).array() - mu).square().mean();
    inv_std(i) = 1.0 / std::sqrt(var + eps);
    xhat.row(i) = (xv.row(i).array() - mu) * inv_std(i);
  }
  Mat y = xhat;
  y.array().rowwise() *= value(gain).row(0).array();
  y.rowwise() += value(bias).row(0);
  return push(std::move(y), needs(x) || needs(gain) || needs(bias),
              [x, gain, bias, xhat = std::move(xhat), inv_std = std::move(inv_std)](
                  Tape& t, const Mat& g) {
                if (t.needs(gain)) t.accumulate(gain, (g.array() * xhat.array()).colwise().sum().matrix());
                if (t.needs(bias)) t.accumulate(bias, g.colwise().sum());
                if (!t.needs(x)) return;
                Mat dxhat = g;
                dxhat.array().rowwise() *= t.value(gain).row(0).array();
                const Eigen::VectorXd m1 = dxhat.rowwise().mean();
                const Eigen::VectorXd m2 = (dxhat.array() * xhat.array()).rowwise().mean();
                Mat dx = dxhat;
                dx.colwise() -= m1;
                dx.array() -= xhat.array().colwise() * m2.array();
                dx.array().colwise() *= inv_std.array();
                t.accumulate(x, dx);
              });
}

Tape::Id Tape::l2_normalize_rows(Id a) {
  const Mat& x = value(a);
  Eigen::VectorXd norms = x.rowwise().norm();
  for (Eigen::Index i = 0; i < norms.size(); ++i) {
    expects(norms(i) > 0.0, ErrorKind::kShapeMismatch, "cannot normalize a zero row");
  }
  Mat y = x.array().colwise() / norms.array();
  const Id out = push(std::move(y), needs(a), nullptr);
  if (needs(a)) {
    nodes_.back().back = [a, out, norms = std::move(norms)](Tape& t, const Mat& g) {
      const Mat& yv = t.value(out);
      const Eigen::VectorXd dot = (g.array() * yv.array()).rowwise().sum();
      Mat d = g - (yv.array().colwise() * dot.array()).matrix();
      d.array().colwise() /= norms.array();
      t.accumulate(a, d);
    };
  }
  return out;
}

void Tape::backward(Id out, const Mat& seed, std::vector<Mat>& grads) {
  Node& root = nodes_[static_cast<std::size_t>(out)];
  expects(seed.rows() == root.value.rows() && seed.cols() == root.value.cols(),
          ErrorKind::kShapeMismatch, "backward seed shape");
  if (!root.needs_grad) return;
  root.grad = seed;
  for (Id id = out; id >= 0; --id) {
    Node& n = nodes_[static_cast<std::size_t>(id)];
    if (n.grad.size() == 0) continue;
    if (n.param_index >= 0) {
      Mat& dst = grads[static_cast<std::size_t>(n.param_index)];
      if (dst.size() == 0) {
        dst = n.grad;
      } else {
        dst += n.grad;
      }
    } else if (n.back) {
      const Mat g = std::move(n.grad);
      n.back(*this, g);
    }
    n.grad = Mat();
  }
}

}  // namespace milpret::embed
