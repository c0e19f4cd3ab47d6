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


#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "leastcore/exact.h"
#include "leastcore/games.h"

namespace leastcore {
namespace {

// max(0, max_C v(C) - p(C)) over all nonempty coalitions.
double MaxExcess(const CharacteristicOracle& game,
                 std::span<const double> p) {
  double worst = 0.0;
  for (const Coalition& c : EnumerateCoalitions(game.num_players())) {
    worst = std::max(worst, game.Value(c) - c.Dot(p));
  }
  return worst;
}

// Grid search over the 3-player simplex at resolution 1/steps.
double GridLeastCore(const CharacteristicOracle& game, int steps) {
  double best = 1e300;
  for (int a = 0; a <= steps; ++a) {
    for (int b = 0; a + b <= steps; ++b) {
      const std::vector<double> p{static_cast<double>(a) / steps,
                                  static_cast<double>(b) / steps,
                                  static_cast<double>(steps - a - b) / steps};
      best = std::min(best, MaxExcess(game, p));
    }
  }
  return best;
}

// Average marginal contribution over all n! orderings.
std::vector<double> ShapleyByPermutations(const CharacteristicOracle& game) {
  const int n = game.num_players();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> phi(n, 0.0);
  double count = 0.0;
  do {
    Coalition prefix(n);
    double before = 0.0;
    for (int i : order) {
      prefix.Insert(i);
      const double after = game.Value(prefix);
      phi[i] += after - before;
      before = after;
    }
    count += 1.0;
  } while (std::next_permutation(order.begin(), order.end()));
  for (double& x : phi) x /= count;
  return phi;
}

std::shared_ptr<TabularGame> RandomTabular(int n, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> values(size_t{1} << n, 0.0);
  for (size_t m = 1; m < values.size(); ++m) values[m] = unit(rng);
  values.back() = 1.0;
  return std::make_shared<TabularGame>(n, std::move(values));
}

TEST_CASE("three-player majority") {
  const auto game = MakeMajorityGame(3);
  const LeastCoreLpResult lp = LeastCoreExact(*Normalize(game));
  CHECK(lp.epsilon == doctest::Approx(1.0 / 3).epsilon(1e-8));
  for (int i = 0; i < 3; ++i) {
    CHECK(lp.payoffs[i] == doctest::Approx(1.0 / 3).epsilon(1e-8));
  }
  CHECK(GridLeastCore(*game, 600) == doctest::Approx(1.0 / 3).epsilon(1e-9));
}

TEST_CASE("unanimity has an empty-excess core") {
  for (int n : {2, 5, 8}) {
    const LeastCoreLpResult lp = LeastCoreExact(*Normalize(MakeUnanimityGame(n)));
    CHECK(std::abs(lp.epsilon) <= 1e-8);
  }
}

TEST_CASE("singleton-win games") {
  for (int n : {3, 5, 10}) {
    const auto game = Normalize(MakeSingletonWinGame(n));
    const LeastCoreLpResult lp = LeastCoreExact(*game);
    CHECK(lp.epsilon == doctest::Approx(1.0 - 1.0 / n).epsilon(1e-8));
    CHECK(MaxExcess(*game, lp.payoffs) == doctest::Approx(lp.epsilon));
  }
}

TEST_CASE("exact least core agrees with grid search on random games") {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const auto game = RandomTabular(3, rng);
    const LeastCoreLpResult lp = LeastCoreExact(*game);
    const double grid = GridLeastCore(*game, 400);
    CHECK(lp.epsilon <= grid + 1e-9);
    CHECK(lp.epsilon >= grid - 2.0 / 400);
    CHECK(MaxExcess(*game, lp.payoffs) == doctest::Approx(lp.epsilon).epsilon(1e-9));
  }
}

TEST_CASE("exact least core is the best certificate over the simplex") {
  Rng rng(23);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const auto game = RandomTabular(6, rng);
    const LeastCoreLpResult lp = LeastCoreExact(*game);
    CHECK(MaxExcess(*game, lp.payoffs) ==
          doctest::Approx(lp.epsilon).epsilon(1e-9));
    for (int probe = 0; probe < 200; ++probe) {
      std::vector<double> p(6);
      for (double& x : p) x = -std::log(unit(rng));
      const double sum = std::accumulate(p.begin(), p.end(), 0.0);
      for (double& x : p) x /= sum;
      CHECK(MaxExcess(*game, p) >= lp.epsilon - 1e-9);
    }
  }
}

TEST_CASE("sampled LP is a relaxation") {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const auto game = RandomTabular(8, rng);
    const double exact = LeastCoreExact(*game).epsilon;
    for (int k : {1, 8, 64}) {
      const LeastCoreLpResult s = SampledLpLeastCore(*game, k, rng);
      CHECK(s.epsilon <= exact + 1e-8);
    }
    std::vector<Coalition> all;
    for (const Coalition& c : EnumerateCoalitions(8)) all.push_back(c);
    CHECK(SampledLpLeastCore(*game, all).epsilon ==
          doctest::Approx(exact).epsilon(1e-8));
  }
}

TEST_CASE("least-core LP argument checks") {
  const std::vector<Coalition> rows{Coalition::FromMask(2, 1)};
  const std::vector<double> values{0.5, 0.2};
  CHECK_THROWS_AS(SolveLeastCoreLp(2, rows, values), Error);
  CHECK_THROWS_AS(SolveLeastCoreLp(2, {}, {}), Error);
  CHECK_THROWS_AS(LeastCoreExact(*Normalize(MakeMajorityGame(17))), Error);
}

TEST_CASE("exact Shapley matches permutation enumeration") {
  Rng rng(41);
  for (int trial = 0; trial < 5; ++trial) {
    const auto game = RandomTabular(5, rng);
    const std::vector<double> phi = ShapleyExact(*game);
    const std::vector<double> oracle = ShapleyByPermutations(*game);
    for (int i = 0; i < 5; ++i) {
      CHECK(phi[i] == doctest::Approx(oracle[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("Shapley axioms on fixtures") {
  const std::vector<double> majority = ShapleyExact(*MakeMajorityGame(5));
  for (double x : majority) CHECK(x == doctest::Approx(0.2));
  // Player 2 has weight zero in [2, 1, 0] with quota 2: a null player.
  const WeightedVotingGame game({2.0, 1.0, 0.0}, 2.0);
  const std::vector<double> phi = ShapleyExact(game);
  CHECK(phi[0] == doctest::Approx(1.0));
  CHECK(phi[1] == doctest::Approx(0.0));
  CHECK(phi[2] == doctest::Approx(0.0));
}

}  // namespace
}  // namespace leastcore
