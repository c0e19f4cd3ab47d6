// Copyright 2026 The Leastcore Authors.
//
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


#include "leastcore/simplex.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "leastcore/error.h"

namespace leastcore {
namespace {

constexpr double kOptimalityTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr double kBreakdownTol = 1e-11;
constexpr double kFeasibilityTol = 1e-8;

// Basic variables are expressed as x_B = rhs - T x_N. The objective row
// stores the negated reduced costs of max z, so a negative entry improves.
class Tableau {
 public:
  Tableau(int rows, int cols)
      : rows_(rows), cols_(cols), width_(cols + 1),
        data_(static_cast<size_t>(rows + 1) * width_, 0.0),
        basic_(rows), nonbasic_(cols), blocked_(cols, false) {}

  double& at(int r, int c) { return data_[static_cast<size_t>(r) * width_ + c]; }
  double& rhs(int r) { return at(r, cols_); }
  double& obj(int c) { return at(rows_, c); }
  double& obj_value() { return at(rows_, cols_); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::vector<int>& basic() { return basic_; }
  std::vector<int>& nonbasic() { return nonbasic_; }
  std::vector<bool>& blocked() { return blocked_; }

  void Pivot(int r, int s) {
    double* prow = &at(r, 0);
    const double inv = 1.0 / prow[s];
    for (int j = 0; j <= cols_; ++j) prow[j] *= inv;
    prow[s] = inv;
    for (int i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      double* row = &at(i, 0);
      const double f = row[s];
      if (f == 0.0) continue;
      for (int j = 0; j <= cols_; ++j) row[j] -= f * prow[j];
      row[s] = -f * inv;
    }
    std::swap(basic_[r], nonbasic_[s]);
  }

 private:
  int rows_;
  int cols_;
  int width_;
  std::vector<double> data_;
  std::vector<int> basic_;
  std::vector<int> nonbasic_;
  std::vector<bool> blocked_;
};

enum class LoopResult { kOptimal, kUnbounded };

struct PivotStats {
  int64_t pivots = 0;
  int64_t degenerate_run = 0;
  bool bland = false;
  int64_t bland_trigger = 0;
  int64_t pivot_cap = 0;
};

LoopResult RunSimplex(Tableau& t, PivotStats& stats) {
  const int m = t.rows();
  const int n = t.cols();
  while (true) {
    int enter = -1;
    double best = -kOptimalityTol;
    for (int j = 0; j < n; ++j) {
      if (t.blocked()[j]) continue;
      const double d = t.obj(j);
      if (d >= -kOptimalityTol) continue;
      if (stats.bland) {
        if (enter < 0 || t.nonbasic()[j] < t.nonbasic()[enter]) enter = j;
      } else if (d < best) {
        best = d;
        enter = j;
      }
    }
    if (enter < 0) return LoopResult::kOptimal;

    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    bool unsafe_candidate = false;
    for (int i = 0; i < m; ++i) {
      const double a = t.at(i, enter);
      if (a <= kPivotTol) {
        if (a > kBreakdownTol) unsafe_candidate = true;
        continue;
      }
      const double ratio = std::max(0.0, t.rhs(i)) / a;
      if (ratio < best_ratio - 1e-12 ||
          (ratio <= best_ratio + 1e-12 && leave >= 0 &&
           t.basic()[i] < t.basic()[leave])) {
        if (ratio < best_ratio) best_ratio = ratio;
        leave = i;
      }
    }
    if (leave < 0) {
      if (unsafe_candidate) {
        throw Error(ErrorCode::kNumericalBreakdown,
                    "only near-zero pivots available");
      }
      return LoopResult::kUnbounded;
    }
    if (best_ratio <= 1e-12) {
      if (++stats.degenerate_run > stats.bland_trigger) stats.bland = true;
    } else {
      stats.degenerate_run = 0;
    }
    t.Pivot(leave, enter);
    for (int i = 0; i < m; ++i) {
      if (t.rhs(i) < 0.0 && t.rhs(i) > -kFeasibilityTol) t.rhs(i) = 0.0;
    }
    if (++stats.pivots > stats.pivot_cap) {
      throw Error(ErrorCode::kCycleLimitExceeded,
                  "simplex exceeded " + std::to_string(stats.pivot_cap) +
                      " pivots");
    }
  }
}

}  // namespace

void DenseLP::AddRow(std::span<const double> coeffs, RowSense sense,
                     double value) {
  if (static_cast<int>(coeffs.size()) != num_cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "row length != column count");
  }
  matrix.insert(matrix.end(), coeffs.begin(), coeffs.end());
  senses.push_back(sense);
  rhs.push_back(value);
}

void DenseLP::Validate() const {
  const size_t rows = rhs.size();
  if (senses.size() != rows ||
      matrix.size() != rows * objective.size() ||
      free_variable.size() != objective.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "inconsistent LP dimensions");
  }
  if (num_rows() > kMaxLpRows || num_cols() > kMaxLpCols ||
      static_cast<int64_t>(num_rows()) * num_cols() > kMaxLpEntries) {
    throw Error(ErrorCode::kInvalidArgument,
                "LP exceeds the dense size limits");
  }
  auto finite = [](double x) { return std::isfinite(x); };
  if (!std::all_of(matrix.begin(), matrix.end(), finite) ||
      !std::all_of(rhs.begin(), rhs.end(), finite) ||
      !std::all_of(objective.begin(), objective.end(), finite)) {
    throw Error(ErrorCode::kNonFiniteInput, "LP has non-finite entries");
  }
}

LPSolution SimplexSolve(const DenseLP& lp) {
  lp.Validate();
  const int orig_cols = lp.num_cols();
  const int orig_rows = lp.num_rows();

  // Standard columns: x+ for every variable, x- for free ones.
  std::vector<int> neg_col(orig_cols, -1);
  int std_cols = orig_cols;
  for (int j = 0; j < orig_cols; ++j) {
    if (lp.free_variable[j]) neg_col[j] = std_cols++;
  }
  // Standard rows: a x <= b; equalities become a pair.
  struct StdRow {
    int orig;
    double sign;
  };
  std::vector<StdRow> std_rows;
  std_rows.reserve(orig_rows);
  for (int i = 0; i < orig_rows; ++i) {
    switch (lp.senses[i]) {
      case RowSense::kLessEqual: std_rows.push_back({i, 1.0}); break;
      case RowSense::kGreaterEqual: std_rows.push_back({i, -1.0}); break;
      case RowSense::kEqual:
        std_rows.push_back({i, 1.0});
        std_rows.push_back({i, -1.0});
        break;
    }
  }
  const int m = static_cast<int>(std_rows.size());
  const int aux = std_cols;
  const int n = std_cols + 1;
  const int aux_id = std_cols + m;

  Tableau t(m, n);
  for (int j = 0; j < n; ++j) t.nonbasic()[j] = j < std_cols ? j : aux_id;
  for (int i = 0; i < m; ++i) {
    t.basic()[i] = std_cols + i;
    const StdRow& sr = std_rows[i];
    for (int j = 0; j < orig_cols; ++j) {
      const double a = sr.sign * lp.at(sr.orig, j);
      t.at(i, j) = a;
      if (neg_col[j] >= 0) t.at(i, neg_col[j]) = -a;
    }
    t.at(i, aux) = -1.0;
    t.rhs(i) = sr.sign * lp.rhs[sr.orig];
  }

  PivotStats stats;
  stats.bland_trigger = 10LL * (m + std_cols);
  stats.pivot_cap = 50LL * (m + std_cols) + 1000;

  LPSolution sol;
  sol.x.assign(orig_cols, 0.0);

  int most_negative = -1;
  for (int i = 0; i < m; ++i) {
    if (t.rhs(i) < -kFeasibilityTol &&
        (most_negative < 0 || t.rhs(i) < t.rhs(most_negative))) {
      most_negative = i;
    }
  }
  if (most_negative >= 0) {
    // Phase 1: maximize -x0 subject to a x - x0 <= b.
    t.obj(aux) = 1.0;
    t.Pivot(most_negative, aux);
    RunSimplex(t, stats);
    if (t.obj_value() < -kFeasibilityTol) {
      sol.status = LPSolution::Status::kInfeasible;
      sol.pivots = stats.pivots;
      sol.used_bland = stats.bland;
      return sol;
    }
    for (int i = 0; i < m; ++i) {
      if (t.basic()[i] != aux_id) continue;
      int best = -1;
      for (int j = 0; j < n; ++j) {
        if (best < 0 || std::abs(t.at(i, j)) > std::abs(t.at(i, best))) {
          best = j;
        }
      }
      if (best >= 0 && std::abs(t.at(i, best)) > kPivotTol) t.Pivot(i, best);
      break;
    }
  }
  for (int j = 0; j < n; ++j) {
    if (t.nonbasic()[j] == aux_id) {
      t.blocked()[j] = true;
      for (int i = 0; i < m; ++i) t.at(i, j) = 0.0;
    }
  }

  // Phase 2 objective: maximize -c^T x.
  std::vector<double> cost(std_cols + m + 1, 0.0);
  for (int j = 0; j < orig_cols; ++j) {
    cost[j] = -lp.objective[j];
    if (neg_col[j] >= 0) cost[neg_col[j]] = lp.objective[j];
  }
  for (int j = 0; j <= n; ++j) t.obj(j) = 0.0;
  for (int j = 0; j < n; ++j) {
    if (!t.blocked()[j]) t.obj(j) = -cost[t.nonbasic()[j]];
  }
  for (int i = 0; i < m; ++i) {
    const double c = cost[t.basic()[i]];
    if (c == 0.0) continue;
    t.obj_value() += c * t.rhs(i);
    for (int j = 0; j < n; ++j) {
      if (!t.blocked()[j]) t.obj(j) += c * t.at(i, j);
    }
  }
  stats.degenerate_run = 0;
  const LoopResult result = RunSimplex(t, stats);
  sol.pivots = stats.pivots;
  sol.used_bland = stats.bland;
  if (result == LoopResult::kUnbounded) {
    sol.status = LPSolution::Status::kUnbounded;
    return sol;
  }

  std::vector<double> x_std(std_cols, 0.0);
  for (int i = 0; i < m; ++i) {
    if (t.basic()[i] < std_cols) x_std[t.basic()[i]] = std::max(0.0, t.rhs(i));
  }
  for (int j = 0; j < orig_cols; ++j) {
    sol.x[j] = x_std[j] - (neg_col[j] >= 0 ? x_std[neg_col[j]] : 0.0);
  }
  std::vector<double> y_std(m, 0.0);
  for (int j = 0; j < n; ++j) {
    const int id = t.nonbasic()[j];
    if (id >= std_cols && id < std_cols + m) {
      y_std[id - std_cols] = t.obj(j);
    }
  }
  sol.duals.assign(orig_rows, 0.0);
  for (int i = 0; i < m; ++i) {
    sol.duals[std_rows[i].orig] += std_rows[i].sign * y_std[i];
  }

  double value = 0.0;
  for (int j = 0; j < orig_cols; ++j) value += lp.objective[j] * sol.x[j];
  sol.objective_value = value;

  // Residual verification: primal feasibility and zero duality gap.
  double dual_value = 0.0;
  for (int i = 0; i < orig_rows; ++i) {
    double ax = 0.0;
    double scale = 1.0 + std::abs(lp.rhs[i]);
    for (int j = 0; j < orig_cols; ++j) {
      ax += lp.at(i, j) * sol.x[j];
      scale += std::abs(lp.at(i, j) * sol.x[j]);
    }
    const double slack = lp.rhs[i] - ax;
    const bool ok =
        lp.senses[i] == RowSense::kLessEqual      ? slack >= -kFeasibilityTol * scale
        : lp.senses[i] == RowSense::kGreaterEqual ? slack <= kFeasibilityTol * scale
                                                  : std::abs(slack) <= kFeasibilityTol * scale;
    if (!ok) {
      throw Error(ErrorCode::kNumericalBreakdown,
                  "optimal point violates row " + std::to_string(i) +
                      " by " + std::to_string(std::abs(slack)));
    }
    dual_value += sol.duals[i] * lp.rhs[i];
  }
  for (int j = 0; j < orig_cols; ++j) {
    if (!lp.free_variable[j] && sol.x[j] < -kFeasibilityTol) {
      throw Error(ErrorCode::kNumericalBreakdown, "negative variable");
    }
  }
  // Max-form dual objective is sum y b and equals -min value at optimum.
  if (std::abs(dual_value + value) > 1e-6 * (1.0 + std::abs(value))) {
    throw Error(ErrorCode::kNumericalBreakdown,
                "duality gap " + std::to_string(std::abs(dual_value + value)));
  }
  sol.status = LPSolution::Status::kOptimal;
  return sol;
}

}  // namespace leastcore
