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


// Monte-Carlo Shapley values under an oracle-call budget. Marginals along a
// permutation reuse the previous prefix value, so one permutation costs
// exactly n calls and v(empty) = 0 costs none.

#ifndef LEASTCORE_SHAPLEY_MC_H_
#define LEASTCORE_SHAPLEY_MC_H_

#include <cstdint>
#include <span>
#include <vector>

#include "leastcore/game_core.h"

namespace leastcore {

struct ShapleyEstimate {
  std::vector<double> phi;
  int64_t permutations = 0;
  uint64_t oracle_calls = 0;
  uint64_t seed = 0;
};

// m_i = v(before(i) + i) - v(before(i)). Throws kInvalidPermutation.
std::vector<double> PermutationMarginals(const CharacteristicOracle& game,
                                         std::span<const int> permutation);

// Samples uniform permutations while a full traversal still fits in
// `budget`. Throws kBudgetTooSmall when budget < n.
ShapleyEstimate ShapleyMc(const CharacteristicOracle& game, uint64_t budget,
                          uint64_t seed);

}  // namespace leastcore

#endif  // LEASTCORE_SHAPLEY_MC_H_
