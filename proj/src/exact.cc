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


#include "leastcore/exact.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "leastcore/games.h"
#include "leastcore/simplex.h"

namespace leastcore {
namespace {

constexpr uint64_t kJitterSeed = 0x1ea57c0e;

}  // namespace


LeastCoreLpResult SolveLeastCoreLp(int num_players,
                                   std::span<const Coalition> coalitions,
                                   std::span<const double> values) {
  if (coalitions.size() != values.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "one value per coalition row");
  }
  const int n = num_players;
  const int m = static_cast<int>(coalitions.size());
  if (m == 0) throw Error(ErrorCode::kEmptySample, "least-core LP needs rows");
  // Solved through its dual, which has n + 1 rows instead of one per
  // coalition: max sum_C v(C) y_C + z subject to
  //   sum_{C containing i} y_C + z <= 0 for every player i,
  //   sum_C y_C <= 1, y >= 0, z free.
  // The row multipliers are p (players) and eps (last row).
  DenseLP lp(m + 1);
  for (int k = 0; k < m; ++k) lp.objective[k] = -values[k];
  lp.objective[m] = -1.0;
  lp.free_variable[m] = true;
  lp.matrix.assign(static_cast<size_t>(n + 1) * (m + 1), 0.0);
  lp.senses.assign(n + 1, RowSense::kLessEqual);
  // Zero right-hand sides make the dual badly degenerate and the simplex
  // stalls; shifting them by distinct amounts in [0.5, 1] * 1e-9 removes
  // the ties. The multipliers stay exactly feasible for the unshifted
  // problem and overshoot eps_min by at most the largest shift.
  lp.rhs.assign(n + 1, 0.0);
  Rng jitter(kJitterSeed);
  std::uniform_real_distribution<double> shift(0.5e-9, 1e-9);
  for (int i = 0; i < n; ++i) lp.rhs[i] = shift(jitter);
  lp.rhs[n] = 1.0;
  for (int k = 0; k < m; ++k) {
    coalitions[k].ForEachMember(
        [&](int i) { lp.matrix[static_cast<size_t>(i) * (m + 1) + k] = 1.0; });
    lp.matrix[static_cast<size_t>(n) * (m + 1) + k] = 1.0;
  }
  for (int i = 0; i < n; ++i) lp.matrix[static_cast<size_t>(i) * (m + 1) + m] = 1.0;

  const LPSolution sol = SimplexSolve(lp);
  if (sol.status != LPSolution::Status::kOptimal) {
    throw Error(ErrorCode::kNumericalBreakdown,
                "least-core LP is always feasible and bounded");
  }
  std::vector<double> p(sol.duals.begin(), sol.duals.begin() + n);
  double sum = 0.0;
  for (double& x : p) {
    x = std::max(0.0, x);
    sum += x;
  }
  if (!(sum > 0.0)) {
    throw Error(ErrorCode::kNumericalBreakdown, "least-core LP lost its payoffs");
  }
  for (double& x : p) x /= sum;
  return {std::max(0.0, sol.duals[n]), Imputation(std::move(p))};
}

LeastCoreLpResult LeastCoreExact(const CharacteristicOracle& game) {
  const int n = game.num_players();
  if (n > kMaxExactLeastCorePlayers) {
    throw Error(ErrorCode::kTooManyPlayers,
                "exact least core supports at most " +
                    std::to_string(kMaxExactLeastCorePlayers) + " players");
  }
  std::vector<Coalition> rows;
  std::vector<double> values;
  rows.reserve(EnumerateCoalitions(n).size());
  for (Coalition c : EnumerateCoalitions(n)) {
    values.push_back(game.Value(c));
    rows.push_back(std::move(c));
  }
  if (std::abs(values.back() - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument,
                "exact least core expects a normalized game (v(I) = 1)");
  }
  return SolveLeastCoreLp(n, rows, values);
}

LeastCoreLpResult SampledLpLeastCore(const CharacteristicOracle& game,
                                     std::span<const Coalition> sample) {
  const int n = game.num_players();
  std::vector<Coalition> rows(sample.begin(), sample.end());
  rows.push_back(Coalition::Grand(n));
  std::vector<double> values;
  values.reserve(rows.size());
  for (const Coalition& c : rows) values.push_back(game.Value(c));
  return SolveLeastCoreLp(n, rows, values);
}

LeastCoreLpResult SampledLpLeastCore(const CharacteristicOracle& game, int k,
                                     Rng& rng) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
  const std::vector<Coalition> sample =
      SampleCoalitions(game.num_players(), k, rng);
  return SampledLpLeastCore(game, sample);
}

std::vector<double> ShapleyExact(const CharacteristicOracle& game) {
  const int n = game.num_players();
  if (n > kMaxExactShapleyPlayers) {
    throw Error(ErrorCode::kTooManyPlayers,
                "exact Shapley supports at most " +
                    std::to_string(kMaxExactShapleyPlayers) + " players");
  }
  const auto table = TabularGame::Materialize(game);
  // weight[s] = s! (n-1-s)! / n!
  std::vector<double> weight(n);
  for (int s = 0; s < n; ++s) {
    weight[s] = std::exp(std::lgamma(s + 1.0) + std::lgamma(n - s + 0.0) -
                         std::lgamma(n + 1.0));
  }
  std::vector<double> phi(n, 0.0);
  const uint64_t full = uint64_t{1} << n;
  for (uint64_t mask = 0; mask < full; ++mask) {
    const int s = std::popcount(mask);
    const double base = table->ValueAt(mask);
    for (int i = 0; i < n; ++i) {
      if ((mask >> i) & 1u) continue;
      phi[i] += weight[s] * (table->ValueAt(mask | (uint64_t{1} << i)) - base);
    }
  }
  return phi;
}

}  // namespace leastcore
