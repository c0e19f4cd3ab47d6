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
#include <numeric>
#include <vector>

#include "doctest.h"
#include "leastcore/exact.h"
#include "leastcore/games.h"
#include "leastcore/shapley_mc.h"

namespace leastcore {
namespace {

TEST_CASE("permutation marginals telescope to the grand value") {
  Rng rng(1);
  const auto game = GenerateWeightedVotingGame(
      9, WeightDistribution::UniformInt(1, 100), 0.5, rng);
  std::vector<int> order{4, 2, 0, 8, 1, 3, 7, 5, 6};
  const std::vector<double> m = PermutationMarginals(*game, order);
  CHECK(std::accumulate(m.begin(), m.end(), 0.0) ==
        game->Value(Coalition::Grand(9)));
  CHECK_THROWS_AS(PermutationMarginals(*game, std::vector<int>{0, 1, 1}),
                  Error);
  CHECK_THROWS_AS(
      PermutationMarginals(*game, std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 9}),
      Error);
}

TEST_CASE("each permutation costs n oracle calls") {
  const auto game = MakeMajorityGame(6);
  const ShapleyEstimate e = ShapleyMc(*game, 100, 3);
  CHECK(e.permutations == 16);
  CHECK(e.oracle_calls == 96);
  CHECK(game->calls() == 96);
  CHECK_THROWS_AS(ShapleyMc(*game, 5, 3), Error);
}

TEST_CASE("estimates are efficient and seeded") {
  Rng rng(2);
  const auto game =
      GenerateMcn(8, 10, 0.3, 0.1, WeightDistribution::Gaussian(0, 1), rng);
  const double grand = game->Value(Coalition::Grand(8));
  const ShapleyEstimate a = ShapleyMc(*game, 8000, 11);
  const ShapleyEstimate b = ShapleyMc(*game, 8000, 11);
  CHECK(a.phi == b.phi);
  CHECK(std::accumulate(a.phi.begin(), a.phi.end(), 0.0) ==
        doctest::Approx(grand).epsilon(1e-12));
  CHECK(ShapleyMc(*game, 8000, 12).phi != a.phi);
}

TEST_CASE("estimates converge to the exact values") {
  Rng rng(3);
  const auto game = GenerateWeightedVotingGame(
      8, WeightDistribution::UniformInt(1, 100), 0.5, rng);
  const std::vector<double> exact = ShapleyExact(*game);
  const ShapleyEstimate e = ShapleyMc(*game, 8 * 20000, 5);
  for (int i = 0; i < 8; ++i) {
    CHECK(std::abs(e.phi[i] - exact[i]) <= 0.01);
  }
}

}  // namespace
}  // namespace leastcore
