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


#include <cmath>
#include <vector>

#include "doctest.h"
#include "leastcore/error.h"
#include "leastcore/simplex.h"

namespace leastcore {
namespace {

using Status = LPSolution::Status;

TEST_CASE("textbook maximization") {
  // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18.
  DenseLP lp(2);
  lp.objective = {-3.0, -5.0};
  lp.AddRow(std::vector<double>{1, 0}, RowSense::kLessEqual, 4);
  lp.AddRow(std::vector<double>{0, 2}, RowSense::kLessEqual, 12);
  lp.AddRow(std::vector<double>{3, 2}, RowSense::kLessEqual, 18);
  const LPSolution s = SimplexSolve(lp);
  REQUIRE(s.status == Status::kOptimal);
  CHECK(s.objective_value == doctest::Approx(-36.0));
  CHECK(s.x[0] == doctest::Approx(2.0));
  CHECK(s.x[1] == doctest::Approx(6.0));
  // Multipliers of <= rows are reported nonnegative: b^T y = -optimum.
  for (double y : s.duals) CHECK(y >= -1e-12);
  CHECK(s.duals[0] == doctest::Approx(0.0));
  CHECK(4 * s.duals[0] + 12 * s.duals[1] + 18 * s.duals[2] ==
        doctest::Approx(36.0));
}

TEST_CASE("equality and greater-equal rows need phase one") {
  // min x + y s.t. x + y >= 2, x - y = 1.
  DenseLP lp(2);
  lp.objective = {1.0, 1.0};
  lp.AddRow(std::vector<double>{1, 1}, RowSense::kGreaterEqual, 2);
  lp.AddRow(std::vector<double>{1, -1}, RowSense::kEqual, 1);
  const LPSolution s = SimplexSolve(lp);
  REQUIRE(s.status == Status::kOptimal);
  CHECK(s.x[0] == doctest::Approx(1.5));
  CHECK(s.x[1] == doctest::Approx(0.5));
}

TEST_CASE("free variables may go negative") {
  // min z s.t. z >= -3, z free.
  DenseLP lp(1);
  lp.objective = {1.0};
  lp.free_variable = {true};
  lp.AddRow(std::vector<double>{1}, RowSense::kGreaterEqual, -3);
  const LPSolution s = SimplexSolve(lp);
  REQUIRE(s.status == Status::kOptimal);
  CHECK(s.x[0] == doctest::Approx(-3.0));
}

TEST_CASE("infeasible and unbounded programs") {
  DenseLP infeasible(1);
  infeasible.objective = {1.0};
  infeasible.AddRow(std::vector<double>{1}, RowSense::kLessEqual, 1);
  infeasible.AddRow(std::vector<double>{1}, RowSense::kGreaterEqual, 2);
  CHECK(SimplexSolve(infeasible).status == Status::kInfeasible);

  DenseLP unbounded(2);
  unbounded.objective = {-1.0, 0.0};
  unbounded.AddRow(std::vector<double>{1, -1}, RowSense::kLessEqual, 1);
  CHECK(SimplexSolve(unbounded).status == Status::kUnbounded);
}

TEST_CASE("degenerate program terminates") {
  // Classic cycling example for Dantzig pricing without anti-cycling.
  DenseLP lp(4);
  lp.objective = {-0.75, 150.0, -0.02, 6.0};
  lp.AddRow(std::vector<double>{0.25, -60, -0.04, 9}, RowSense::kLessEqual, 0);
  lp.AddRow(std::vector<double>{0.5, -90, -0.02, 3}, RowSense::kLessEqual, 0);
  lp.AddRow(std::vector<double>{0, 0, 1, 0}, RowSense::kLessEqual, 1);
  const LPSolution s = SimplexSolve(lp);
  REQUIRE(s.status == Status::kOptimal);
  CHECK(s.objective_value == doctest::Approx(-0.05));
}

TEST_CASE("malformed programs are rejected") {
  DenseLP lp(2);
  lp.objective = {1.0, NAN};
  lp.AddRow(std::vector<double>{1, 1}, RowSense::kLessEqual, 1);
  CHECK_THROWS_AS(SimplexSolve(lp), Error);
  DenseLP short_row(2);
  CHECK_THROWS_AS(short_row.AddRow(std::vector<double>{1}, RowSense::kEqual, 0),
                  Error);
}

}  // namespace
}  // namespace leastcore
