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

#include "milpret/core/instance.hpp"

#include <algorithm>
#include <cmath>

#include "milpret/core/error.hpp"

namespace milpret {

std::string MilpInstance::var_name(int j) const {
  if (!var_names.empty()) return var_names[j];
  return "x" + std::to_string(j);
}

std::string MilpInstance::row_name(int i) const {
  if (!row_names.empty()) return row_names[i];
  return "c" + std::to_string(i);
}

void validate(const MilpInstance& inst) {
  const auto bad = [](const std::string& what) { fail(ErrorKind::kInvalidInstance, what); };
  const int n = inst.num_vars();
  const int m = inst.num_rows();
  if (n < 1) bad("instance has no variables");
  if (m < 1) bad("instance has no constraints");
  if (inst.lower.size() != static_cast<std::size_t>(n) ||
      inst.upper.size() != static_cast<std::size_t>(n) ||
      inst.integrality.size() != static_cast<std::size_t>(n)) {
    bad("bound/integrality vectors do not match the variable count");
  }
  if (inst.b.size() != static_cast<std::size_t>(m) ||
      inst.row_start.size() != static_cast<std::size_t>(m) + 1) {
    bad("rhs/row_start do not match the row count");
  }
  if (!inst.var_names.empty() && inst.var_names.size() != static_cast<std::size_t>(n)) {
    bad("var_names size mismatch");
  }
  if (!inst.row_names.empty() && inst.row_names.size() != static_cast<std::size_t>(m)) {
    bad("row_names size mismatch");
  }
  if (inst.row_start.front() != 0 || inst.row_start.back() != inst.nnz() ||
      inst.col_index.size() != inst.value.size()) {
    bad("CSR arrays are inconsistent");
  }
  for (int j = 0; j < n; ++j) {
    if (!std::isfinite(inst.c[j])) bad("non-finite objective coefficient");
    if (std::isnan(inst.lower[j]) || std::isnan(inst.upper[j])) bad("NaN bound");
    if (inst.lower[j] == kInf || inst.upper[j] == -kInf) bad("bound at the wrong infinity");
    if (inst.lower[j] > inst.upper[j]) bad("lower bound exceeds upper bound for " + inst.var_name(j));
    if (inst.integrality[j] == VarType::kBinary &&
        (inst.lower[j] != 0.0 || inst.upper[j] != 1.0)) {
      bad("binary variable " + inst.var_name(j) + " without [0,1] bounds");
    }
  }
  for (int i = 0; i < m; ++i) {
    if (!std::isfinite(inst.b[i])) bad("non-finite rhs");
    const auto cols = inst.row_cols(i);
    const auto vals = inst.row_vals(i);
    if (cols.empty()) bad("row " + inst.row_name(i) + " has no nonzeros");
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (cols[k] < 0 || cols[k] >= n) bad("column index out of range");
      if (k > 0 && cols[k] <= cols[k - 1]) bad("column indices not strictly increasing");
      if (vals[k] == 0.0) bad("explicit zero stored");
      if (!std::isfinite(vals[k])) bad("non-finite coefficient");
    }
  }
}

bool structurally_equal(const MilpInstance& a, const MilpInstance& b) {
  return a.objective_sense == b.objective_sense && a.c == b.c && a.row_start == b.row_start &&
         a.col_index == b.col_index && a.value == b.value && a.senses == b.senses &&
         a.b == b.b && a.lower == b.lower && a.upper == b.upper &&
         a.integrality == b.integrality;
}

std::vector<double> row_activity(const MilpInstance& inst, std::span<const double> x) {
  std::vector<double> act(inst.num_rows(), 0.0);
  for (int i = 0; i < inst.num_rows(); ++i) {
    const auto cols = inst.row_cols(i);
    const auto vals = inst.row_vals(i);
    double s = 0.0;
    for (std::size_t k = 0; k < cols.size(); ++k) s += vals[k] * x[cols[k]];
    act[i] = s;
  }
  return act;
}

bool is_feasible_point(const MilpInstance& inst, std::span<const double> x, double tol,
                       double int_tol) {
  if (x.size() != static_cast<std::size_t>(inst.num_vars())) return false;
  for (int j = 0; j < inst.num_vars(); ++j) {
    if (x[j] < inst.lower[j] - tol || x[j] > inst.upper[j] + tol) return false;
    if (is_integral(inst.integrality[j]) && std::abs(x[j] - std::round(x[j])) > int_tol) {
      return false;
    }
  }
  const auto act = row_activity(inst, x);
  for (int i = 0; i < inst.num_rows(); ++i) {
    switch (inst.senses[i]) {
      case RowSense::kLessEqual:
        if (act[i] > inst.b[i] + tol) return false;
        break;
      case RowSense::kGreaterEqual:
        if (act[i] < inst.b[i] - tol) return false;
        break;
      case RowSense::kEqual:
        if (std::abs(act[i] - inst.b[i]) > tol) return false;
        break;
    }
  }
  return true;
}

double objective_value(const MilpInstance& inst, std::span<const double> x) {
  double s = 0.0;
  for (int j = 0; j < inst.num_vars(); ++j) s += inst.c[j] * x[j];
  return s;
}

ColumnView column_view(const MilpInstance& inst) {
  const int n = inst.num_vars();
  ColumnView cv;
  cv.col_start.assign(n + 1, 0);
  for (auto j : inst.col_index) ++cv.col_start[j + 1];
  for (int j = 0; j < n; ++j) cv.col_start[j + 1] += cv.col_start[j];
  cv.row_index.resize(inst.col_index.size());
  cv.value.resize(inst.value.size());
  std::vector<std::int64_t> fill(cv.col_start.begin(), cv.col_start.end() - 1);
  for (int i = 0; i < inst.num_rows(); ++i) {
    for (auto k = inst.row_start[i]; k < inst.row_start[i + 1]; ++k) {
      const auto pos = fill[inst.col_index[k]]++;
      cv.row_index[pos] = i;
      cv.value[pos] = inst.value[k];
    }
  }
  return cv;
}

InstanceBuilder::InstanceBuilder(std::string name, ObjectiveSense sense) {
  inst_.name = std::move(name);
  inst_.objective_sense = sense;
  inst_.row_start.push_back(0);
}

int InstanceBuilder::add_var(double obj, double lb, double ub, VarType type) {
  inst_.c.push_back(obj);
  inst_.lower.push_back(lb);
  inst_.upper.push_back(ub);
  inst_.integrality.push_back(type);
  return static_cast<int>(inst_.c.size()) - 1;
}

int InstanceBuilder::add_row(std::vector<std::pair<int, double>> terms, RowSense sense,
                             double rhs) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::size_t out = 0;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (out > 0 && terms[out - 1].first == terms[k].first) {
      terms[out - 1].second += terms[k].second;
    } else {
      terms[out++] = terms[k];
    }
  }
  terms.resize(out);
  for (const auto& [j, v] : terms) {
    if (v == 0.0) continue;
    inst_.col_index.push_back(j);
    inst_.value.push_back(v);
  }
  inst_.row_start.push_back(static_cast<std::int64_t>(inst_.value.size()));
  inst_.senses.push_back(sense);
  inst_.b.push_back(rhs);
  return static_cast<int>(inst_.senses.size()) - 1;
}

MilpInstance InstanceBuilder::build() && {
  validate(inst_);
  return std::move(inst_);
}

}  // namespace milpret
