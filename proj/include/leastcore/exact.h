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


// Exact small-instance oracles: the full least-core LP, the sampled
// constraint LP baseline, and enumerated Shapley values.

#ifndef LEASTCORE_EXACT_H_
#define LEASTCORE_EXACT_H_

#include <span>
#include <vector>

#include "leastcore/game_core.h"

namespace leastcore {

inline constexpr int kMaxExactLeastCorePlayers = 16;
inline constexpr int kMaxExactShapleyPlayers = 12;

struct LeastCoreLpResult {
  double epsilon = 0.0;
  Imputation payoffs = Imputation::Uniform(1);
};

// min eps s.t. p^T c + eps >= v(C) for every listed row, sum p = 1, p >= 0,
// eps >= 0.
LeastCoreLpResult SolveLeastCoreLp(int num_players,
                                   std::span<const Coalition> coalitions,
                                   std::span<const double> values);

// All 2^n - 1 coalition rows. The game must be normalized (v(I) = 1).
// Throws kTooManyPlayers above 16 players.
LeastCoreLpResult LeastCoreExact(const CharacteristicOracle& game);

// Rows for k sampled coalitions plus the grand coalition.
LeastCoreLpResult SampledLpLeastCore(const CharacteristicOracle& game, int k,
                                     Rng& rng);
LeastCoreLpResult SampledLpLeastCore(const CharacteristicOracle& game,
                                     std::span<const Coalition> sample);

// Phi_i = sum over C not containing i of |C|!(n-1-|C|)!/n! (v(C+i) - v(C)).
std::vector<double> ShapleyExact(const CharacteristicOracle& game);

}  // namespace leastcore

#endif  // LEASTCORE_EXACT_H_
