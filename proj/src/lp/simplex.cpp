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

#include "milpret/lp/simplex.hpp"

#include <algorithm>
#include <cmath>

namespace milpret::lp {
namespace {

constexpr double kFeasTol = 1e-9;
constexpr double kOptTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr double kPhaseOneTol = 1e-7;
constexpr int kDegenerateRunForBland = 1000;

}  // namespace

DenseSimplex::DenseSimplex(const MilpInstance& inst)
    : inst_(inst),
      n_(inst.num_vars()),
      m_(inst.num_rows()),
      sign_(inst.objective_sense == ObjectiveSense::kMinimize ? 1.0 : -1.0),
      struct_lower_(inst.lower),
      struct_upper_(inst.upper) {}

void DenseSimplex::reset() {
  // Crash: try a few nonbasic placements of the structurals and keep the one
  // leaving the fewest rows for phase 1 (lower-first, upper-first,
  // cost-favoured; ties go to the earlier one).
  std::vector<double> xs;
  std::vector<double> activity;
  int best_bad = m_ + 1;
  for (int mode = 0; mode < 3; ++mode) {
    std::vector<double> cand(n_);
    for (int j = 0; j < n_; ++j) {
      const double l = struct_lower_[j];
      const double u = struct_upper_[j];
      bool up = mode == 1 || (mode == 2 && sign_ * inst_.c[j] < 0.0);
      if (up ? u == kInf : l == -kInf) up = !up;
      cand[j] = up ? (u != kInf ? u : 0.0) : (l != -kInf ? l : 0.0);
    }
    auto act = row_activity(inst_, cand);
    int bad = 0;
    for (int i = 0; i < m_; ++i) {
      const double r = inst_.b[i] - act[i];
      switch (inst_.senses[i]) {
        case RowSense::kLessEqual: bad += r < -kFeasTol; break;
        case RowSense::kGreaterEqual: bad += r > kFeasTol; break;
        case RowSense::kEqual: bad += std::abs(r) > kFeasTol; break;
      }
    }
    if (bad < best_bad) {
      best_bad = bad;
      xs = std::move(cand);
      activity = std::move(act);
    }
  }
  std::vector<double> slack_lo(m_), slack_hi(m_), slack_val(m_);
  std::vector<double> art(m_, 0.0);  // sigma for rows needing an artificial, 0 otherwise
  int n_art = 0;
  for (int i = 0; i < m_; ++i) {
    switch (inst_.senses[i]) {
      case RowSense::kLessEqual: slack_lo[i] = 0.0; slack_hi[i] = kInf; break;
      case RowSense::kGreaterEqual: slack_lo[i] = -kInf; slack_hi[i] = 0.0; break;
      case RowSense::kEqual: slack_lo[i] = 0.0; slack_hi[i] = 0.0; break;
    }
    const double r = inst_.b[i] - activity[i];
    if (r >= slack_lo[i] - kFeasTol && r <= slack_hi[i] + kFeasTol) {
      slack_val[i] = std::clamp(r, slack_lo[i], slack_hi[i]);
    } else {
      slack_val[i] = std::clamp(r, slack_lo[i], slack_hi[i]);
      art[i] = r > slack_val[i] ? 1.0 : -1.0;
      ++n_art;
    }
  }
  cols_ = n_ + m_ + n_art;
  stride_ = static_cast<std::size_t>(cols_) + 1;
  tableau_.assign(static_cast<std::size_t>(m_) * stride_, 0.0);
  lower_.assign(cols_, 0.0);
  upper_.assign(cols_, 0.0);
  cost_.assign(cols_, 0.0);
  x_.assign(cols_, 0.0);
  d_.assign(cols_, 0.0);
  basic_.assign(m_, -1);
  row_of_.assign(cols_, -1);
  art_sign_.assign(n_art, 0.0);

  for (int j = 0; j < n_; ++j) {
    lower_[j] = struct_lower_[j];
    upper_[j] = struct_upper_[j];
    x_[j] = xs[j];
  }
  int k = 0;
  for (int i = 0; i < m_; ++i) {
    const int s = n_ + i;
    lower_[s] = slack_lo[i];
    upper_[s] = slack_hi[i];
    x_[s] = slack_val[i];
    double* t = row(i);
    const double scale = art[i] != 0.0 ? art[i] : 1.0;
    const auto cols = inst_.row_cols(i);
    const auto vals = inst_.row_vals(i);
    for (std::size_t p = 0; p < cols.size(); ++p) t[cols[p]] = vals[p] / scale;
    t[s] = 1.0 / scale;
    t[cols_] = inst_.b[i] / scale;
    if (art[i] != 0.0) {
      const int a = n_ + m_ + k;
      art_sign_[k++] = art[i];
      t[a] = 1.0;
      lower_[a] = 0.0;
      upper_[a] = kInf;
      x_[a] = std::abs(inst_.b[i] - activity[i] - slack_val[i]);
      basic_[i] = a;
      row_of_[a] = i;
    } else {
      basic_[i] = s;
      row_of_[s] = i;
    }
  }
  recompute_column_norms();
}

void DenseSimplex::recompute_column_norms() {
  norm2_.assign(cols_, 1.0);
  for (int i = 0; i < m_; ++i) {
    const double* t = row(i);
    for (int j = 0; j < cols_; ++j) norm2_[j] += t[j] * t[j];
  }
}

void DenseSimplex::recompute_basic_values() {
  std::vector<int> nz;
  for (int j = 0; j < cols_; ++j) {
    if (row_of_[j] < 0 && x_[j] != 0.0) nz.push_back(j);
  }
  for (int i = 0; i < m_; ++i) {
    const double* t = row(i);
    double v = t[cols_];
    for (int j : nz) v -= t[j] * x_[j];
    x_[basic_[i]] = v;
  }
}

void DenseSimplex::recompute_reduced_costs() {
  d_ = cost_;
  for (int i = 0; i < m_; ++i) {
    const double cb = cost_[basic_[i]];
    if (cb == 0.0) continue;
    const double* t = row(i);
    for (int j = 0; j < cols_; ++j) d_[j] -= cb * t[j];
  }
  for (int i = 0; i < m_; ++i) d_[basic_[i]] = 0.0;
}

void DenseSimplex::pivot(int r, int q) {
  double* pr = row(r);
  const double inv = 1.0 / pr[q];
  // Column norms (1 + sum of squares) are kept exact by adding the change of
  // every touched entry; the rhs column is excluded.
  double* nrm = norm2_.data();
  std::vector<int> nz;
  nz.reserve(stride_);
  for (int k = 0; k < cols_; ++k) {
    if (pr[k] != 0.0) {
      const double old = pr[k];
      pr[k] *= inv;
      nrm[k] += pr[k] * pr[k] - old * old;
      nz.push_back(k);
    }
  }
  pr[cols_] *= inv;
  pr[q] = 1.0;
  const bool sparse = nz.size() * 3 < stride_;
  for (int i = 0; i < m_; ++i) {
    if (i == r) continue;
    double* t = row(i);
    const double f = t[q];
    if (f == 0.0) continue;
    if (sparse) {
      for (int k : nz) {
        const double old = t[k];
        const double nv = old - f * pr[k];
        nrm[k] += nv * nv - old * old;
        t[k] = nv;
      }
    } else {
      for (int k = 0; k < cols_; ++k) {
        const double old = t[k];
        const double nv = old - f * pr[k];
        nrm[k] += nv * nv - old * old;
        t[k] = nv;
      }
    }
    t[cols_] -= f * pr[cols_];
    t[q] = 0.0;
  }
  nrm[q] = 2.0;  // unit column
  const double fd = d_[q];
  if (fd != 0.0) {
    for (int k : nz) {
      if (k < cols_) d_[k] -= fd * pr[k];
    }
  }
  d_[q] = 0.0;
  const int leaving = basic_[r];
  row_of_[leaving] = -1;
  basic_[r] = q;
  row_of_[q] = r;
}

LpStatus DenseSimplex::primal(std::int64_t max_iters) {
  int degenerate_run = 0;
  for (;;) {
    if (iterations_ >= max_iters) return LpStatus::kLimitReached;
    const bool bland = degenerate_run > kDegenerateRunForBland;
    int q = -1;
    double best = 0.0;
    for (int j = 0; j < cols_; ++j) {
      if (row_of_[j] >= 0 || is_fixed(j)) continue;
      const double dj = d_[j];
      double score;
      if (dj < -kOptTol && x_[j] < upper_[j]) {
        score = dj * dj / norm2_[j];
      } else if (dj > kOptTol && x_[j] > lower_[j]) {
        score = dj * dj / norm2_[j];
      } else {
        continue;
      }
      if (bland) {
        q = j;
        break;
      }
      if (score > best) {
        best = score;
        q = j;
      }
    }
    if (q < 0) return LpStatus::kOptimal;

    const double dir = d_[q] < 0.0 ? 1.0 : -1.0;
    double t = (lower_[q] == -kInf || upper_[q] == kInf) ? kInf : upper_[q] - lower_[q];
    int r = -1;
    double r_alpha = 0.0;
    for (int i = 0; i < m_; ++i) {
      const double alpha = dir * row(i)[q];
      if (std::abs(alpha) <= kPivotTol) continue;
      const int j = basic_[i];
      double lim;
      if (alpha > 0.0) {
        if (lower_[j] == -kInf) continue;
        lim = (x_[j] - lower_[j]) / alpha;
      } else {
        if (upper_[j] == kInf) continue;
        lim = (upper_[j] - x_[j]) / (-alpha);
      }
      lim = std::max(lim, 0.0);
      bool take = false;
      if (lim < t - 1e-12) {
        take = true;
      } else if (r >= 0 && lim <= t + 1e-12) {
        take = bland ? basic_[i] < basic_[r] : std::abs(alpha) > std::abs(r_alpha);
      }
      if (take) {
        t = lim;
        r = i;
        r_alpha = alpha;
      }
    }
    if (t == kInf) return LpStatus::kUnbounded;

    ++iterations_;
    if (t > 0.0) {
      x_[q] += dir * t;
      for (int i = 0; i < m_; ++i) {
        const double a = row(i)[q];
        if (a != 0.0) x_[basic_[i]] -= dir * t * a;
      }
    }
    degenerate_run = t <= 1e-12 ? degenerate_run + 1 : 0;
    if (r < 0) {
      x_[q] = dir > 0 ? upper_[q] : lower_[q];
      continue;
    }
    const int leaving = basic_[r];
    x_[leaving] = r_alpha > 0.0 ? lower_[leaving] : upper_[leaving];
    pivot(r, q);
  }
}

LpStatus DenseSimplex::dual(std::int64_t max_iters) {
  for (;;) {
    if (iterations_ >= max_iters) return LpStatus::kLimitReached;
    int r = -1;
    double worst = kFeasTol;
    for (int i = 0; i < m_; ++i) {
      const int j = basic_[i];
      double viol = 0.0;
      if (x_[j] < lower_[j]) {
        viol = lower_[j] - x_[j];
      } else if (x_[j] > upper_[j]) {
        viol = x_[j] - upper_[j];
      }
      if (viol > worst) {
        worst = viol;
        r = i;
      }
    }
    if (r < 0) return LpStatus::kOptimal;
    const int leaving = basic_[r];
    const bool below = x_[leaving] < lower_[leaving];
    const double target = below ? lower_[leaving] : upper_[leaving];
    const double* pr = row(r);

    int q = -1;
    double best_ratio = kInf;
    double best_abs = 0.0;
    for (int k = 0; k < cols_; ++k) {
      if (row_of_[k] >= 0 || is_fixed(k)) continue;
      const double a = pr[k];
      if (std::abs(a) <= kPivotTol) continue;
      // x_leaving moves by -a * delta_k; pick the sign of delta_k that pushes
      // it towards the violated bound.
      const double step = below ? (a < 0.0 ? 1.0 : -1.0) : (a > 0.0 ? 1.0 : -1.0);
      if (step > 0.0 && !(x_[k] < upper_[k])) continue;
      if (step < 0.0 && !(x_[k] > lower_[k])) continue;
      const double ratio = std::abs(d_[k]) / std::abs(a);
      if (ratio < best_ratio - 1e-12 ||
          (ratio <= best_ratio + 1e-12 && std::abs(a) > best_abs)) {
        best_ratio = ratio;
        best_abs = std::abs(a);
        q = k;
      }
    }
    if (q < 0) return LpStatus::kInfeasible;

    ++iterations_;
    const double delta = (x_[leaving] - target) / pr[q];
    x_[q] += delta;
    for (int i = 0; i < m_; ++i) {
      const double a = row(i)[q];
      if (a != 0.0) x_[basic_[i]] -= a * delta;
    }
    x_[leaving] = target;
    pivot(r, q);
  }
}

LpStatus DenseSimplex::solve(std::int64_t max_iters) {
  reset();
  const int n_art = cols_ - n_ - m_;
  if (n_art > 0) {
    phase_ = 1;
    std::fill(cost_.begin(), cost_.end(), 0.0);
    for (int a = n_ + m_; a < cols_; ++a) cost_[a] = 1.0;
    recompute_reduced_costs();
    const auto st = primal(max_iters);
    if (st == LpStatus::kLimitReached) return st;
    double infeas = 0.0;
    for (int a = n_ + m_; a < cols_; ++a) infeas += x_[a];
    if (infeas > kPhaseOneTol) return LpStatus::kInfeasible;
    for (int a = n_ + m_; a < cols_; ++a) {
      upper_[a] = 0.0;
      if (row_of_[a] < 0) x_[a] = 0.0;
    }
  }
  phase_ = 2;
  std::fill(cost_.begin(), cost_.end(), 0.0);
  for (int j = 0; j < n_; ++j) cost_[j] = sign_ * inst_.c[j];
  recompute_reduced_costs();
  return polish(primal(max_iters), max_iters);
}

LpStatus DenseSimplex::polish(LpStatus st, std::int64_t max_iters) {
  // Basic values are updated incrementally; rebuild them from the tableau and
  // repair any drift with a dual pass.
  for (int round = 0; round < 2 && st == LpStatus::kOptimal; ++round) {
    recompute_basic_values();
    recompute_reduced_costs();
    bool clean = true;
    for (int i = 0; i < m_ && clean; ++i) {
      const int j = basic_[i];
      clean = x_[j] >= lower_[j] - 1e-7 && x_[j] <= upper_[j] + 1e-7;
    }
    if (clean) return st;
    st = dual(max_iters);
    if (st == LpStatus::kOptimal) st = primal(max_iters);
  }
  return st;
}

void DenseSimplex::set_bounds(std::span<const double> lower, std::span<const double> upper) {
  for (int j = 0; j < n_; ++j) {
    struct_lower_[j] = lower[j];
    struct_upper_[j] = upper[j];
    if (!lower_.empty()) {
      lower_[j] = lower[j];
      upper_[j] = upper[j];
    }
  }
}

LpStatus DenseSimplex::resolve(std::int64_t max_iters) {
  if (phase_ != 2 || tableau_.empty()) return solve(max_iters);
  recompute_reduced_costs();
  for (int j = 0; j < cols_; ++j) {
    if (row_of_[j] >= 0) continue;
    const double l = lower_[j];
    const double u = upper_[j];
    if (l == u) {
      x_[j] = l;
    } else if (d_[j] > kOptTol) {
      if (l == -kInf) return solve(max_iters);
      x_[j] = l;
    } else if (d_[j] < -kOptTol) {
      if (u == kInf) return solve(max_iters);
      x_[j] = u;
    } else if (!(x_[j] == l || x_[j] == u)) {
      x_[j] = l != -kInf ? l : (u != kInf ? u : 0.0);
    }
  }
  recompute_basic_values();
  const auto st = dual(max_iters);
  if (st != LpStatus::kOptimal) return st;
  return polish(primal(max_iters), max_iters);
}

double DenseSimplex::objective_min_sense() const {
  double s = 0.0;
  for (int j = 0; j < n_; ++j) s += sign_ * inst_.c[j] * x_[j];
  return s;
}

LpSolution DenseSimplex::solution(LpStatus status) const {
  LpSolution sol;
  sol.status = status;
  sol.iterations = iterations_;
  sol.x.assign(x_.begin(), x_.begin() + n_);
  sol.obj = objective_value(inst_, sol.x);
  sol.basis.resize(n_);
  for (int j = 0; j < n_; ++j) {
    if (row_of_[j] >= 0) {
      sol.basis[j] = BasisStatus::kBasic;
    } else if (lower_[j] != -kInf && x_[j] == lower_[j]) {
      sol.basis[j] = BasisStatus::kAtLower;
    } else if (upper_[j] != kInf && x_[j] == upper_[j]) {
      sol.basis[j] = BasisStatus::kAtUpper;
    } else {
      sol.basis[j] = BasisStatus::kZero;
    }
  }
  sol.y.assign(m_, 0.0);
  if (phase_ == 2) {
    for (int i = 0; i < m_; ++i) sol.y[i] = -sign_ * d_[n_ + i];
  }
  sol.activity = row_activity(inst_, sol.x);
  return sol;
}

LpSolution solve_lp_relaxation(const MilpInstance& inst, const LpLimits& limits) {
  DenseSimplex simplex(inst);
  const auto status = simplex.solve(limits.max_iters);
  return simplex.solution(status);
}

}  // namespace milpret::lp
