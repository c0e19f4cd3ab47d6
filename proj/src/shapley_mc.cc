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


#include "leastcore/shapley_mc.h"

#include <algorithm>
#include <numeric>
#include <string>

namespace leastcore {
namespace {

void AddMarginals(const CharacteristicOracle& game,
                  std::span<const int> permutation, std::vector<double>& out) {
  Coalition prefix(game.num_players());
  double previous = 0.0;
  for (int player : permutation) {
    prefix.Insert(player);
    const double current = game.Value(prefix);
    out[player] += current - previous;
    previous = current;
  }
}

}  // namespace

std::vector<double> PermutationMarginals(const CharacteristicOracle& game,
                                         std::span<const int> permutation) {
  const int n = game.num_players();
  if (static_cast<int>(permutation.size()) != n) {
    throw Error(ErrorCode::kInvalidPermutation,
                "permutation length " + std::to_string(permutation.size()) +
                    " != " + std::to_string(n));
  }
  std::vector<bool> seen(n, false);
  for (int player : permutation) {
    if (player < 0 || player >= n || seen[player]) {
      throw Error(ErrorCode::kInvalidPermutation,
                  "not a bijection on the players");
    }
    seen[player] = true;
  }
  std::vector<double> marginals(n, 0.0);
  AddMarginals(game, permutation, marginals);
  return marginals;
}

ShapleyEstimate ShapleyMc(const CharacteristicOracle& game, uint64_t budget,
                          uint64_t seed) {
  const int n = game.num_players();
  if (budget < static_cast<uint64_t>(n)) {
    throw Error(ErrorCode::kBudgetTooSmall,
                "budget " + std::to_string(budget) +
                    " cannot cover one permutation of " + std::to_string(n) +
                    " players");
  }
  ShapleyEstimate estimate;
  estimate.seed = seed;
  estimate.permutations = static_cast<int64_t>(budget / n);
  estimate.phi.assign(n, 0.0);

  Rng rng(seed);
  std::vector<int> permutation(n);
  std::iota(permutation.begin(), permutation.end(), 0);
  const uint64_t calls_before = game.calls();
  for (int64_t k = 0; k < estimate.permutations; ++k) {
    std::shuffle(permutation.begin(), permutation.end(), rng);
    AddMarginals(game, permutation, estimate.phi);
  }
  const double inv = 1.0 / static_cast<double>(estimate.permutations);
  for (double& x : estimate.phi) x *= inv;
  estimate.oracle_calls = game.calls() - calls_before;
  return estimate;
}

}  // namespace leastcore
