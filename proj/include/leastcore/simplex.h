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


// Dense two-phase primal simplex on a condensed (nonbasic-column) tableau.

#ifndef LEASTCORE_SIMPLEX_H_
#define LEASTCORE_SIMPLEX_H_

#include <cstdint>
#include <span>
#include <vector>

namespace leastcore {

enum class RowSense { kLessEqual, kEqual, kGreaterEqual };

// minimize objective^T x subject to row constraints; every variable is
// either x >= 0 or free.
struct DenseLP {
  std::vector<double> objective;
  std::vector<double> matrix;  // row-major, rows x objective.size()
  std::vector<RowSense> senses;
  std::vector<double> rhs;
  std::vector<bool> free_variable;

  explicit DenseLP(int num_cols = 0)
      : objective(num_cols, 0.0), free_variable(num_cols, false) {}

  int num_cols() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rhs.size()); }
  double at(int row, int col) const {
    return matrix[static_cast<size_t>(row) * num_cols() + col];
  }
  void AddRow(std::span<const double> coeffs, RowSense sense, double value);

  // Dimensions consistent, entries finite, within the dense size caps.
  void Validate() const;
};

struct LPSolution {
  enum class Status { kOptimal, kInfeasible, kUnbounded };

  Status status = Status::kInfeasible;
  double objective_value = 0.0;
  std::vector<double> x;
  // One multiplier per original row (sign per the row sense).
  std::vector<double> duals;
  int64_t pivots = 0;
  bool used_bland = false;
};

inline constexpr int kMaxLpRows = 1 << 17;
inline constexpr int kMaxLpCols = 1 << 17;
inline constexpr int64_t kMaxLpEntries = int64_t{1} << 25;

// Throws kNumericalBreakdown when the only admissible pivots are tiny or
// the optimal point fails its residual check, and kCycleLimitExceeded when
// the pivot cap is reached.
LPSolution SimplexSolve(const DenseLP& lp);

}  // namespace leastcore

#endif  // LEASTCORE_SIMPLEX_H_
