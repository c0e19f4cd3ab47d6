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
#include <set>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "leastcore/game_io.h"
#include "leastcore/games.h"

namespace leastcore {
namespace {

double ValueOf(const CharacteristicOracle& game, uint64_t mask) {
  return game.Value(Coalition::FromMask(game.num_players(), mask));
}

TEST_CASE("weighted voting game wins at the quota") {
  const WeightedVotingGame game({3.0, 2.0, 1.0}, 4.0);
  CHECK(ValueOf(game, 0b001) == 0.0);
  CHECK(ValueOf(game, 0b011) == 1.0);
  CHECK(ValueOf(game, 0b101) == 1.0);
  CHECK(ValueOf(game, 0b110) == 0.0);
  CHECK(ValueOf(game, 0b111) == 1.0);
}

TEST_CASE("fixture games") {
  const auto majority = MakeMajorityGame(5);
  CHECK(ValueOf(*majority, 0b00111) == 1.0);
  CHECK(ValueOf(*majority, 0b00011) == 0.0);
  const auto unanimity = MakeUnanimityGame(4);
  CHECK(ValueOf(*unanimity, 0b0111) == 0.0);
  CHECK(ValueOf(*unanimity, 0b1111) == 1.0);
  const auto singleton = MakeSingletonWinGame(4);
  for (uint64_t mask = 1; mask < 16; ++mask) {
    CHECK(ValueOf(*singleton, mask) == 1.0);
  }
}

TEST_CASE("generated voting games use the proportional quota") {
  Rng rng(3);
  const auto game = GenerateWeightedVotingGame(
      12, WeightDistribution::UniformInt(1, 100), 0.5, rng);
  CHECK(game->quota() == doctest::Approx(0.5 * 12 * 50.5));
  for (double w : game->weights()) {
    CHECK(w >= 1.0);
    CHECK(w <= 100.0);
    CHECK(w == std::round(w));
  }
  CHECK_THROWS_AS(GenerateWeightedVotingGame(
                      4, WeightDistribution::UniformInt(1, 100), 0.0, rng),
                  Error);
}

TEST_CASE("weight distributions parse and validate") {
  CHECK(WeightDistribution::Parse("uniform-int:1:100").Mean() == 50.5);
  CHECK(WeightDistribution::Parse("gaussian:1:0.3").Mean() == 1.0);
  CHECK(WeightDistribution::Parse("exponential:2").Mean() == 0.5);
  CHECK(WeightDistribution::Parse("beta:2:6").Mean() == doctest::Approx(0.25));
  const WeightDistribution d = WeightDistribution::Parse("gaussian:1:0.3");
  CHECK(WeightDistribution::Parse(d.ToString()).b == d.b);
  CHECK_THROWS_AS(WeightDistribution::Parse("gaussian:1:-1"), Error);
  CHECK_THROWS_AS(WeightDistribution::Parse("uniform-int:5:1"), Error);
  CHECK_THROWS_AS(WeightDistribution::Parse("exponential:0"), Error);
  CHECK_THROWS_AS(WeightDistribution::Parse("cauchy:0:1"), Error);
  CHECK_THROWS_AS(WeightDistribution::Parse("gaussian:1"), Error);
}

TEST_CASE("positive draws stay positive") {
  Rng rng(11);
  const WeightDistribution d = WeightDistribution::Gaussian(0.1, 1.0);
  for (int k = 0; k < 2000; ++k) CHECK(d.SamplePositive(rng) > 0.0);
}

TEST_CASE("standard normal quantile") {
  CHECK(StandardNormalQuantile(0.5) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(StandardNormalQuantile(0.6) ==
        doctest::Approx(0.2533471031357997).epsilon(1e-12));
  CHECK(StandardNormalQuantile(0.975) ==
        doctest::Approx(1.959963984540054).epsilon(1e-12));
  CHECK_THROWS_AS(StandardNormalQuantile(1.0), Error);
}

TEST_CASE("graph generators") {
  Rng rng(5);
  SUBCASE("erdos-renyi extremes") {
    CHECK(GenerateGraph(graph_model::ErdosRenyi{1.0}, 7, rng).size() == 21);
    CHECK(GenerateGraph(graph_model::ErdosRenyi{0.0}, 7, rng).empty());
  }
  SUBCASE("ring lattice without shortcuts") {
    const EdgeList edges =
        GenerateGraph(graph_model::NewmanWattsStrogatz{4, 0.0}, 10, rng);
    CHECK(edges.size() == 20);
  }
  SUBCASE("partition with no cross edges") {
    const EdgeList edges =
        GenerateGraph(graph_model::Partition{2, 1.0, 0.0}, 8, rng);
    CHECK(edges.size() == 12);
  }
  SUBCASE("edges are simple and ordered") {
    for (const char* spec : {"er:0.3", "nws:4:0.2", "partition:3:0.6:0.1",
                             "dualba:1:3:0.5", "plc:2:0.3",
                             "intersection:8:0.3"}) {
      const EdgeList edges = GenerateGraph(ParseGraphModel(spec), 30, rng);
      std::set<std::pair<int, int>> seen(edges.begin(), edges.end());
      CHECK(seen.size() == edges.size());
      for (const auto& [u, v] : edges) {
        CHECK(u >= 0);
        CHECK(u < v);
        CHECK(v < 30);
      }
    }
  }
  SUBCASE("bad parameters") {
    CHECK_THROWS_AS(GenerateGraph(ParseGraphModel("er:1.5"), 5, rng), Error);
    CHECK_THROWS_AS(GenerateGraph(ParseGraphModel("nws:6:0.1"), 5, rng),
                    Error);
    CHECK_THROWS_AS(ParseGraphModel("er"), Error);
    CHECK_THROWS_AS(ParseGraphModel("smallworld:2"), Error);
  }
}

TEST_CASE("edge weights hit the positive fraction") {
  Rng rng(9);
  EdgeList edges;
  for (int u = 0; u < 200; ++u) {
    for (int v = u + 1; v < 200; ++v) edges.push_back({u, v});
  }
  const WeightedGraph graph = AssignEdgeWeights(edges, 200, 1.0, rng, 0.6);
  const auto positive = std::count_if(
      graph.edges.begin(), graph.edges.end(),
      [](const WeightedEdge& e) { return e.weight > 0.0; });
  CHECK(static_cast<double>(positive) / graph.edges.size() ==
        doctest::Approx(0.6).epsilon(0.02));
}

TEST_CASE("induced subgraph game sums internal edges") {
  WeightedGraph g;
  g.num_vertices = 4;
  g.edges = {{0, 1, 2.0}, {1, 2, -1.0}, {2, 3, 0.5}};
  const InducedSubgraphGame game(g);
  CHECK(ValueOf(game, 0b0001) == 0.0);
  CHECK(ValueOf(game, 0b0011) == 2.0);
  CHECK(ValueOf(game, 0b0111) == 1.0);
  CHECK(ValueOf(game, 0b1111) == 1.5);
  WeightedGraph bad = g;
  bad.edges.push_back({1, 0, 1.0});
  CHECK_THROWS_AS(InducedSubgraphGame{bad}, Error);
}

TEST_CASE("marginal contribution network rules") {
  std::vector<McnRule> rules;
  rules.push_back({Coalition::FromMask(3, 0b001), Coalition::FromMask(3, 0b100),
                   2.0});
  rules.push_back({Coalition::FromMask(3, 0b110), Coalition(3), 1.0});
  const MarginalContributionNetwork game(3, rules);
  CHECK(ValueOf(game, 0b001) == 2.0);
  CHECK(ValueOf(game, 0b101) == 0.0);
  CHECK(ValueOf(game, 0b111) == 1.0);
  CHECK(ValueOf(game, 0b011) == 2.0);

  std::vector<McnRule> overlapping{
      {Coalition::FromMask(3, 0b001), Coalition::FromMask(3, 0b001), 1.0}};
  CHECK_THROWS_AS(MarginalContributionNetwork(3, overlapping), Error);
}

TEST_CASE("generated networks have a zero empty coalition") {
  Rng rng(21);
  const auto game =
      GenerateMcn(10, 10, 0.3, 0.1, WeightDistribution::Gaussian(0, 1), rng);
  CHECK(game->rules().size() == 10);
  CHECK(game->Value(Coalition(10)) == doctest::Approx(0.0));
  for (const McnRule& r : game->rules()) {
    CHECK_FALSE(r.positive.Intersects(r.negative));
  }
}

TEST_CASE("tabular games materialize any oracle") {
  const auto majority = MakeMajorityGame(3);
  const auto table = TabularGame::Materialize(*majority);
  CHECK(table->values() ==
        std::vector<double>{0, 0, 0, 1, 0, 1, 1, 1});
  CHECK_THROWS_AS(TabularGame(2, {1, 0, 0, 0}), Error);
  CHECK_THROWS_AS(TabularGame(2, {0, 0, 0}), Error);
}

TEST_CASE("game files round-trip exactly") {
  Rng rng(4);
  std::vector<OraclePtr> games;
  games.push_back(GenerateWeightedVotingGame(
      6, WeightDistribution::Gaussian(1.0, 0.3), 0.5, rng));
  games.push_back(std::make_shared<InducedSubgraphGame>(AssignEdgeWeights(
      GenerateGraph(graph_model::ErdosRenyi{0.5}, 6, rng), 6, 1.0, rng)));
  games.push_back(
      GenerateMcn(6, 5, 0.3, 0.1, WeightDistribution::Gaussian(0, 1), rng));
  for (const OraclePtr& game : games) {
    std::stringstream buffer;
    WriteGame(buffer, *game);
    const OraclePtr back = ReadGame(buffer);
    REQUIRE(back->num_players() == 6);
    for (uint64_t mask = 0; mask < 64; ++mask) {
      CHECK(ValueOf(*back, mask) == ValueOf(*game, mask));
    }
  }
}

TEST_CASE("malformed game files") {
  for (const char* text : {"wvg 2 1\n1\n", "graph 3 1\n0 5 1.0\n",
                           "mcn 2 1\nzz 0 1\n", "unknown 2\n", ""}) {
    std::stringstream in(text);
    CHECK_THROWS_AS(ReadGame(in), Error);
  }
}

TEST_CASE("coalition hex codes") {
  const Coalition c = Coalition::FromMembers(70, std::vector<int>{0, 4, 69});
  CHECK(CoalitionToHex(Coalition::FromMask(8, 0x1f)) == "1f");
  CHECK(CoalitionFromHex(70, CoalitionToHex(c)) == c);
  CHECK_THROWS_AS(CoalitionFromHex(4, "ff"), Error);
}

}  // namespace
}  // namespace leastcore
