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


// Compact game families and the seeded random generators used to build them.

#ifndef LEASTCORE_GAMES_H_
#define LEASTCORE_GAMES_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "leastcore/game_core.h"

namespace leastcore {

struct WeightDistribution {
  enum class Kind { kUniformInt, kGaussian, kExponential, kBeta };

  Kind kind = Kind::kUniformInt;
  double a = 1.0;  // lo, mean, rate or alpha
  double b = 100.0;  // hi, std dev, unused or beta

  static WeightDistribution UniformInt(int lo, int hi);
  static WeightDistribution Gaussian(double mean, double stddev);
  static WeightDistribution Exponential(double rate);
  static WeightDistribution Beta(double alpha, double beta);

  // "uniform-int:1:100", "gaussian:1:0.1", "exponential:2", "beta:2:2".
  static WeightDistribution Parse(std::string_view text);
  std::string ToString() const;

  // Throws kInvalidDistributionParams.
  void Validate() const;
  double Mean() const;
  double Sample(Rng& rng) const;
  // Redraws until the draw is strictly positive.
  double SamplePositive(Rng& rng) const;
};

// v(C) = 1 iff the members' total weight reaches the quota.
class WeightedVotingGame : public CharacteristicOracle {
 public:
  WeightedVotingGame(std::vector<double> weights, double quota);

  const std::vector<double>& weights() const { return weights_; }
  double quota() const { return quota_; }

 protected:
  double Evaluate(const Coalition& coalition) const override;

 private:
  std::vector<double> weights_;
  double quota_;
};

// Quota q = xi * n * E[w]. Weights are resampled until positive.
std::shared_ptr<WeightedVotingGame> GenerateWeightedVotingGame(
    int num_players, const WeightDistribution& dist, double xi, Rng& rng);

// v = 1 iff |C| >= floor(n/2) + 1.
std::shared_ptr<WeightedVotingGame> MakeMajorityGame(int num_players);
// v = 1 only for the grand coalition.
std::shared_ptr<WeightedVotingGame> MakeUnanimityGame(int num_players);
// v = 1 for every nonempty coalition.
std::shared_ptr<WeightedVotingGame> MakeSingletonWinGame(int num_players);

struct WeightedEdge {
  int u = 0;
  int v = 0;
  double weight = 0.0;
};

struct WeightedGraph {
  int num_vertices = 0;
  std::vector<WeightedEdge> edges;

  // Endpoints in range, u < v, no duplicate pairs.
  void Validate() const;
};

// v(C) = sum of weights of edges with both endpoints in C.
class InducedSubgraphGame : public CharacteristicOracle {
 public:
  explicit InducedSubgraphGame(WeightedGraph graph);

  const WeightedGraph& graph() const { return graph_; }

 protected:
  double Evaluate(const Coalition& coalition) const override;

 private:
  WeightedGraph graph_;
};

namespace graph_model {
struct ErdosRenyi { double p; };
struct NewmanWattsStrogatz { int k; double p; };
struct Partition { int parts; double p_in; double p_out; };
struct DualBarabasiAlbert { int m1; int m2; double p; };
struct PowerlawCluster { int m; double p; };
struct UniformIntersection { int m; double p; };
}  // namespace graph_model

using GraphModel =
    std::variant<graph_model::ErdosRenyi, graph_model::NewmanWattsStrogatz,
                 graph_model::Partition, graph_model::DualBarabasiAlbert,
                 graph_model::PowerlawCluster,
                 graph_model::UniformIntersection>;

using EdgeList = std::vector<std::pair<int, int>>;

// "er:0.3", "nws:4:0.1", "partition:4:0.8:0.1", "dualba:1:3:0.25",
// "plc:2:0.5", "intersection:5:0.2".
GraphModel ParseGraphModel(std::string_view text);

// Simple undirected graph with pairs (u < v) in sorted order.
// Throws kInvalidGraphParams.
EdgeList GenerateGraph(const GraphModel& model, int num_vertices, Rng& rng);

// x such that Phi(x) = probability, by bisection on erfc.
double StandardNormalQuantile(double probability);

// Gaussian(sigma * Phi^{-1}(positive_fraction), sigma) edge weights.
WeightedGraph AssignEdgeWeights(const EdgeList& edges, int num_vertices,
                                double sigma, Rng& rng,
                                double positive_fraction = 0.6);

struct McnRule {
  Coalition positive;
  Coalition negative;
  double weight = 0.0;
};

// A rule pays its weight to C iff positive is a subset of C and negative
// misses C. The value at the empty set is subtracted from every coalition.
class MarginalContributionNetwork : public CharacteristicOracle {
 public:
  MarginalContributionNetwork(int num_players, std::vector<McnRule> rules);

  const std::vector<McnRule>& rules() const { return rules_; }
  double offset() const { return offset_; }
  double RawValue(const Coalition& coalition) const;

 protected:
  double Evaluate(const Coalition& coalition) const override;

 private:
  std::vector<McnRule> rules_;
  double offset_ = 0.0;
};

inline constexpr int64_t kMcnResampleLimit = 1'000'000;

// Each player joins P with probability p and N with probability q; rules
// with overlap are discarded whole. Weights are raw (signed) draws.
std::shared_ptr<MarginalContributionNetwork> GenerateMcn(
    int num_players, int num_rules, double p, double q,
    const WeightDistribution& weight_dist, Rng& rng);

// Dense table of all 2^n values, n <= 20, indexed by bitmask.
class TabularGame : public CharacteristicOracle {
 public:
  TabularGame(int num_players, std::vector<double> values);

  // Queries every coalition of `game` once.
  static std::shared_ptr<TabularGame> Materialize(
      const CharacteristicOracle& game);

  const std::vector<double>& values() const { return values_; }
  double ValueAt(uint64_t mask) const { return values_[mask]; }

 protected:
  double Evaluate(const Coalition& coalition) const override;

 private:
  std::vector<double> values_;
};

// Wraps a callable; the callable must return 0 for the empty coalition.
class FunctionGame : public CharacteristicOracle {
 public:
  using Fn = std::function<double(const Coalition&)>;
  FunctionGame(int num_players, Fn fn)
      : CharacteristicOracle(num_players), fn_(std::move(fn)) {}

 protected:
  double Evaluate(const Coalition& coalition) const override {
    return fn_(coalition);
  }

 private:
  Fn fn_;
};

}  // namespace leastcore

#endif  // LEASTCORE_GAMES_H_
