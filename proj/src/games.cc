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


#include "leastcore/games.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "leastcore/text.h"

namespace leastcore {
namespace {

void CheckProbability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kInvalidGraphParams,
                std::string(what) + " must lie in [0, 1]");
  }
}

bool Bernoulli(Rng& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

int UniformIndex(Rng& rng, int size) {
  return std::uniform_int_distribution<int>(0, size - 1)(rng);
}

EdgeList Canonical(const std::set<std::pair<int, int>>& edges) {
  return EdgeList(edges.begin(), edges.end());
}

void AddEdge(std::set<std::pair<int, int>>& edges, int u, int v) {
  if (u == v) return;
  edges.emplace(std::min(u, v), std::max(u, v));
}

EdgeList ErdosRenyi(const graph_model::ErdosRenyi& m, int n, Rng& rng) {
  CheckProbability(m.p, "edge probability");
  EdgeList edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (Bernoulli(rng, m.p)) edges.emplace_back(u, v);
    }
  }
  return edges;
}

EdgeList NewmanWattsStrogatz(const graph_model::NewmanWattsStrogatz& m,
                             int n, Rng& rng) {
  CheckProbability(m.p, "shortcut probability");
  if (m.k < 1 || m.k >= n) {
    throw Error(ErrorCode::kInvalidGraphParams, "need 1 <= k < n");
  }
  std::set<std::pair<int, int>> edges;
  for (int j = 1; j <= m.k / 2; ++j) {
    for (int u = 0; u < n; ++u) AddEdge(edges, u, (u + j) % n);
  }
  std::vector<std::pair<int, int>> ring(edges.begin(), edges.end());
  // Ring edges are kept; each may spawn one random shortcut from u.
  for (const auto& [u, v] : ring) {
    if (!Bernoulli(rng, m.p)) continue;
    int w = UniformIndex(rng, n);
    int attempts = 0;
    while ((w == u || edges.count({std::min(u, w), std::max(u, w)}) != 0) &&
           attempts < 4 * n) {
      w = UniformIndex(rng, n);
      ++attempts;
    }
    if (w != u && edges.count({std::min(u, w), std::max(u, w)}) == 0) {
      AddEdge(edges, u, w);
    }
  }
  return Canonical(edges);
}

EdgeList PartitionGraph(const graph_model::Partition& m, int n, Rng& rng) {
  CheckProbability(m.p_in, "p_in");
  CheckProbability(m.p_out, "p_out");
  if (m.parts < 1 || m.parts > n) {
    throw Error(ErrorCode::kInvalidGraphParams, "need 1 <= parts <= n");
  }
  std::vector<int> group(n);
  const int base = n / m.parts;
  const int extra = n % m.parts;
  int vertex = 0;
  for (int g = 0; g < m.parts; ++g) {
    const int count = base + (g < extra ? 1 : 0);
    for (int k = 0; k < count; ++k) group[vertex++] = g;
  }
  EdgeList edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const double p = group[u] == group[v] ? m.p_in : m.p_out;
      if (Bernoulli(rng, p)) edges.emplace_back(u, v);
    }
  }
  return edges;
}

// Draws `count` distinct entries of `pool` uniformly (pool has repeats, so
// the draw is degree-proportional).
std::vector<int> DistinctFromPool(const std::vector<int>& pool, int count,
                                  Rng& rng) {
  std::set<int> chosen;
  while (static_cast<int>(chosen.size()) < count) {
    chosen.insert(pool[UniformIndex(rng, static_cast<int>(pool.size()))]);
  }
  return std::vector<int>(chosen.begin(), chosen.end());
}

EdgeList DualBarabasiAlbert(const graph_model::DualBarabasiAlbert& m, int n,
                            Rng& rng) {
  CheckProbability(m.p, "p");
  if (m.m1 < 1 || m.m2 < 1 || m.m1 >= n || m.m2 >= n) {
    throw Error(ErrorCode::kInvalidGraphParams, "need 1 <= m1, m2 < n");
  }
  const int core = std::max(m.m1, m.m2);
  std::set<std::pair<int, int>> edges;
  std::vector<int> pool;
  // Star seed on vertices 0..core.
  for (int v = 1; v <= core; ++v) {
    AddEdge(edges, 0, v);
    pool.push_back(0);
    pool.push_back(v);
  }
  for (int source = core + 1; source < n; ++source) {
    const int m_edges = Bernoulli(rng, m.p) ? m.m1 : m.m2;
    for (int target : DistinctFromPool(pool, m_edges, rng)) {
      AddEdge(edges, source, target);
      pool.push_back(target);
      pool.push_back(source);
    }
  }
  return Canonical(edges);
}

EdgeList PowerlawCluster(const graph_model::PowerlawCluster& m, int n,
                         Rng& rng) {
  CheckProbability(m.p, "triangle probability");
  if (m.m < 1 || m.m >= n) {
    throw Error(ErrorCode::kInvalidGraphParams, "need 1 <= m < n");
  }
  std::vector<std::set<int>> adjacency(n);
  std::set<std::pair<int, int>> edges;
  std::vector<int> pool;
  for (int v = 0; v < m.m; ++v) pool.push_back(v);
  for (int source = m.m; source < n; ++source) {
    std::vector<int> candidates = DistinctFromPool(pool, m.m, rng);
    std::shuffle(candidates.begin(), candidates.end(), rng);
    auto connect = [&](int target) {
      AddEdge(edges, source, target);
      adjacency[source].insert(target);
      adjacency[target].insert(source);
      pool.push_back(target);
    };
    size_t next = 0;
    int target = candidates[next++];
    connect(target);
    int count = 1;
    while (count < m.m) {
      if (Bernoulli(rng, m.p)) {
        std::vector<int> closers;
        for (int nb : adjacency[target]) {
          if (nb != source && adjacency[source].count(nb) == 0) {
            closers.push_back(nb);
          }
        }
        if (!closers.empty()) {
          connect(closers[UniformIndex(rng, static_cast<int>(closers.size()))]);
          ++count;
          continue;
        }
      }
      while (next < candidates.size() &&
             adjacency[source].count(candidates[next]) != 0) {
        ++next;
      }
      if (next >= candidates.size()) break;
      target = candidates[next++];
      connect(target);
      ++count;
    }
    for (int k = 0; k < m.m; ++k) pool.push_back(source);
  }
  return Canonical(edges);
}

EdgeList UniformIntersection(const graph_model::UniformIntersection& m, int n,
                             Rng& rng) {
  CheckProbability(m.p, "element probability");
  if (m.m < 1) {
    throw Error(ErrorCode::kInvalidGraphParams, "need m >= 1");
  }
  std::vector<std::vector<bool>> has(n, std::vector<bool>(m.m));
  for (int v = 0; v < n; ++v) {
    for (int e = 0; e < m.m; ++e) has[v][e] = Bernoulli(rng, m.p);
  }
  EdgeList edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      for (int e = 0; e < m.m; ++e) {
        if (has[u][e] && has[v][e]) {
          edges.emplace_back(u, v);
          break;
        }
      }
    }
  }
  return edges;
}

}  // namespace

WeightDistribution WeightDistribution::UniformInt(int lo, int hi) {
  return {Kind::kUniformInt, static_cast<double>(lo), static_cast<double>(hi)};
}
WeightDistribution WeightDistribution::Gaussian(double mean, double stddev) {
  return {Kind::kGaussian, mean, stddev};
}
WeightDistribution WeightDistribution::Exponential(double rate) {
  return {Kind::kExponential, rate, 0.0};
}
WeightDistribution WeightDistribution::Beta(double alpha, double beta) {
  return {Kind::kBeta, alpha, beta};
}

WeightDistribution WeightDistribution::Parse(std::string_view text) {
  const std::vector<std::string> parts = SplitString(text, ':');
  auto num = [&](size_t i) {
    if (i >= parts.size()) {
      throw Error(ErrorCode::kInvalidDistributionParams,
                  "missing parameter in '" + std::string(text) + "'");
    }
    return ParseDouble(parts[i]);
  };
  WeightDistribution dist;
  if (parts.empty()) {
    throw Error(ErrorCode::kInvalidDistributionParams, "empty distribution");
  }
  const std::string& kind = parts[0];
  if (kind == "uniform-int") {
    dist = UniformInt(static_cast<int>(num(1)), static_cast<int>(num(2)));
  } else if (kind == "gaussian") {
    dist = Gaussian(num(1), num(2));
  } else if (kind == "exponential") {
    dist = Exponential(num(1));
  } else if (kind == "beta") {
    dist = Beta(num(1), num(2));
  } else {
    throw Error(ErrorCode::kInvalidDistributionParams,
                "unknown distribution '" + kind + "'");
  }
  dist.Validate();
  return dist;
}

std::string WeightDistribution::ToString() const {
  switch (kind) {
    case Kind::kUniformInt:
      return "uniform-int:" + FormatShort(a) + ":" + FormatShort(b);
    case Kind::kGaussian:
      return "gaussian:" + FormatShort(a) + ":" + FormatShort(b);
    case Kind::kExponential:
      return "exponential:" + FormatShort(a);
    case Kind::kBeta:
      return "beta:" + FormatShort(a) + ":" + FormatShort(b);
  }
  return "";
}

void WeightDistribution::Validate() const {
  bool ok = true;
  switch (kind) {
    case Kind::kUniformInt: ok = a <= b; break;
    case Kind::kGaussian: ok = b > 0.0; break;
    case Kind::kExponential: ok = a > 0.0; break;
    case Kind::kBeta: ok = a > 0.0 && b > 0.0; break;
  }
  if (!ok) {
    throw Error(ErrorCode::kInvalidDistributionParams,
                "invalid parameters for " + ToString());
  }
}

double WeightDistribution::Mean() const {
  switch (kind) {
    case Kind::kUniformInt: return 0.5 * (a + b);
    case Kind::kGaussian: return a;
    case Kind::kExponential: return 1.0 / a;
    case Kind::kBeta: return a / (a + b);
  }
  return 0.0;
}

double WeightDistribution::Sample(Rng& rng) const {
  switch (kind) {
    case Kind::kUniformInt:
      return static_cast<double>(std::uniform_int_distribution<int64_t>(
          static_cast<int64_t>(a), static_cast<int64_t>(b))(rng));
    case Kind::kGaussian:
      return std::normal_distribution<double>(a, b)(rng);
    case Kind::kExponential:
      return std::exponential_distribution<double>(a)(rng);
    case Kind::kBeta: {
      const double x = std::gamma_distribution<double>(a, 1.0)(rng);
      const double y = std::gamma_distribution<double>(b, 1.0)(rng);
      return x / (x + y);
    }
  }
  return 0.0;
}

double WeightDistribution::SamplePositive(Rng& rng) const {
  for (int attempt = 0; attempt < 1'000'000; ++attempt) {
    const double w = Sample(rng);
    if (w > 0.0) return w;
  }
  throw Error(ErrorCode::kResampleLimitExceeded,
              "no positive draw from " + ToString());
}

WeightedVotingGame::WeightedVotingGame(std::vector<double> weights,
                                       double quota)
    : CharacteristicOracle(static_cast<int>(weights.size())),
      weights_(std::move(weights)),
      quota_(quota) {
  if (!(quota_ > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "quota must be positive");
  }
}

double WeightedVotingGame::Evaluate(const Coalition& coalition) const {
  double total = 0.0;
  coalition.ForEachMember([&](int i) { total += weights_[i]; });
  return total >= quota_ ? 1.0 : 0.0;
}

std::shared_ptr<WeightedVotingGame> GenerateWeightedVotingGame(
    int num_players, const WeightDistribution& dist, double xi, Rng& rng) {
  dist.Validate();
  if (num_players < 1) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one player");
  }
  if (!(xi > 0.0 && xi <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "xi must lie in (0, 1]");
  }
  std::vector<double> weights(num_players);
  for (double& w : weights) w = dist.SamplePositive(rng);
  const double quota = xi * num_players * dist.Mean();
  return std::make_shared<WeightedVotingGame>(std::move(weights), quota);
}

std::shared_ptr<WeightedVotingGame> MakeMajorityGame(int num_players) {
  return std::make_shared<WeightedVotingGame>(
      std::vector<double>(num_players, 1.0), num_players / 2 + 1);
}

std::shared_ptr<WeightedVotingGame> MakeUnanimityGame(int num_players) {
  return std::make_shared<WeightedVotingGame>(
      std::vector<double>(num_players, 1.0), num_players);
}

std::shared_ptr<WeightedVotingGame> MakeSingletonWinGame(int num_players) {
  return std::make_shared<WeightedVotingGame>(
      std::vector<double>(num_players, 1.0), 0.5);
}

void WeightedGraph::Validate() const {
  std::set<std::pair<int, int>> seen;
  for (const WeightedEdge& e : edges) {
    if (e.u < 0 || e.v >= num_vertices || e.u >= e.v) {
      throw Error(ErrorCode::kInvalidArgument,
                  "edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                      ") must satisfy 0 <= u < v < n");
    }
    if (!seen.emplace(e.u, e.v).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate edge");
    }
  }
}

InducedSubgraphGame::InducedSubgraphGame(WeightedGraph graph)
    : CharacteristicOracle(graph.num_vertices), graph_(std::move(graph)) {
  graph_.Validate();
}

double InducedSubgraphGame::Evaluate(const Coalition& coalition) const {
  double total = 0.0;
  for (const WeightedEdge& e : graph_.edges) {
    if (coalition.Contains(e.u) && coalition.Contains(e.v)) total += e.weight;
  }
  return total;
}

GraphModel ParseGraphModel(std::string_view text) {
  const std::vector<std::string> parts = SplitString(text, ':');
  auto num = [&](size_t i) {
    if (i >= parts.size()) {
      throw Error(ErrorCode::kInvalidGraphParams,
                  "missing parameter in '" + std::string(text) + "'");
    }
    return ParseDouble(parts[i]);
  };
  auto integer = [&](size_t i) { return static_cast<int>(num(i)); };
  if (parts.empty()) throw Error(ErrorCode::kInvalidGraphParams, "empty model");
  const std::string& kind = parts[0];
  if (kind == "er") return graph_model::ErdosRenyi{num(1)};
  if (kind == "nws") return graph_model::NewmanWattsStrogatz{integer(1), num(2)};
  if (kind == "partition") {
    return graph_model::Partition{integer(1), num(2), num(3)};
  }
  if (kind == "dualba") {
    return graph_model::DualBarabasiAlbert{integer(1), integer(2), num(3)};
  }
  if (kind == "plc") return graph_model::PowerlawCluster{integer(1), num(2)};
  if (kind == "intersection") {
    return graph_model::UniformIntersection{integer(1), num(2)};
  }
  throw Error(ErrorCode::kInvalidGraphParams,
              "unknown graph model '" + kind + "'");
}

EdgeList GenerateGraph(const GraphModel& model, int num_vertices, Rng& rng) {
  if (num_vertices < 1) {
    throw Error(ErrorCode::kInvalidGraphParams, "need at least one vertex");
  }
  return std::visit(
      [&](const auto& m) -> EdgeList {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, graph_model::ErdosRenyi>) {
          return ErdosRenyi(m, num_vertices, rng);
        } else if constexpr (std::is_same_v<M,
                                            graph_model::NewmanWattsStrogatz>) {
          return NewmanWattsStrogatz(m, num_vertices, rng);
        } else if constexpr (std::is_same_v<M, graph_model::Partition>) {
          return PartitionGraph(m, num_vertices, rng);
        } else if constexpr (std::is_same_v<M,
                                            graph_model::DualBarabasiAlbert>) {
          return DualBarabasiAlbert(m, num_vertices, rng);
        } else if constexpr (std::is_same_v<M, graph_model::PowerlawCluster>) {
          return PowerlawCluster(m, num_vertices, rng);
        } else {
          return UniformIntersection(m, num_vertices, rng);
        }
      },
      model);
}

double StandardNormalQuantile(double probability) {
  if (!(probability > 0.0 && probability < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "quantile probability must lie in (0, 1)");
  }
  // Phi(x) = erfc(-x / sqrt(2)) / 2 is increasing in x.
  double lo = -40.0;
  double hi = 40.0;
  for (int iter = 0; iter < 200 && hi - lo > 1e-16; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (0.5 * std::erfc(-mid / std::sqrt(2.0)) < probability) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

WeightedGraph AssignEdgeWeights(const EdgeList& edges, int num_vertices,
                                double sigma, Rng& rng,
                                double positive_fraction) {
  if (!(sigma > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "sigma must be positive");
  }
  if (!(positive_fraction > 0.0 && positive_fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "positive fraction must lie in (0, 1)");
  }
  const double mean = sigma * StandardNormalQuantile(positive_fraction);
  std::normal_distribution<double> normal(mean, sigma);
  WeightedGraph graph;
  graph.num_vertices = num_vertices;
  graph.edges.reserve(edges.size());
  for (const auto& [u, v] : edges) {
    graph.edges.push_back({std::min(u, v), std::max(u, v), normal(rng)});
  }
  return graph;
}

MarginalContributionNetwork::MarginalContributionNetwork(
    int num_players, std::vector<McnRule> rules)
    : CharacteristicOracle(num_players), rules_(std::move(rules)) {
  for (const McnRule& r : rules_) {
    if (r.positive.num_players() != num_players ||
        r.negative.num_players() != num_players) {
      throw Error(ErrorCode::kDimensionMismatch, "rule player count mismatch");
    }
    if (r.positive.Intersects(r.negative)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "rule positive and negative parts overlap");
    }
  }
  offset_ = RawValue(Coalition(num_players));
}

double MarginalContributionNetwork::RawValue(const Coalition& coalition) const {
  double total = 0.0;
  for (const McnRule& r : rules_) {
    if (r.positive.IsSubsetOf(coalition) && !r.negative.Intersects(coalition)) {
      total += r.weight;
    }
  }
  return total;
}

double MarginalContributionNetwork::Evaluate(const Coalition& coalition) const {
  return RawValue(coalition) - offset_;
}

std::shared_ptr<MarginalContributionNetwork> GenerateMcn(
    int num_players, int num_rules, double p, double q,
    const WeightDistribution& weight_dist, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "p and q must lie in [0, 1]");
  }
  if (num_rules < 1) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one rule");
  }
  weight_dist.Validate();
  std::vector<McnRule> rules;
  rules.reserve(num_rules);
  for (int r = 0; r < num_rules; ++r) {
    int64_t discards = 0;
    while (true) {
      McnRule rule{Coalition(num_players), Coalition(num_players), 0.0};
      bool overlap = false;
      for (int i = 0; i < num_players; ++i) {
        const bool in_p = Bernoulli(rng, p);
        const bool in_n = Bernoulli(rng, q);
        if (in_p) rule.positive.Insert(i);
        if (in_n) rule.negative.Insert(i);
        overlap = overlap || (in_p && in_n);
      }
      if (!overlap) {
        rule.weight = weight_dist.Sample(rng);
        rules.push_back(std::move(rule));
        break;
      }
      if (++discards >= kMcnResampleLimit) {
        throw Error(ErrorCode::kResampleLimitExceeded,
                    "rule sampler discarded " + std::to_string(discards) +
                        " rules in a row");
      }
    }
  }
  return std::make_shared<MarginalContributionNetwork>(num_players,
                                                       std::move(rules));
}

TabularGame::TabularGame(int num_players, std::vector<double> values)
    : CharacteristicOracle(num_players), values_(std::move(values)) {
  if (num_players > kMaxEnumerablePlayers) {
    throw Error(ErrorCode::kTooManyPlayers, "tabular games hold n <= 20");
  }
  if (values_.size() != (size_t{1} << num_players)) {
    throw Error(ErrorCode::kDimensionMismatch, "table must hold 2^n values");
  }
  if (values_[0] != 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "v(empty) must be 0");
  }
}

std::shared_ptr<TabularGame> TabularGame::Materialize(
    const CharacteristicOracle& game) {
  const int n = game.num_players();
  if (n > kMaxEnumerablePlayers) {
    throw Error(ErrorCode::kTooManyPlayers, "tabular games hold n <= 20");
  }
  std::vector<double> values(size_t{1} << n, 0.0);
  for (uint64_t mask = 1; mask < values.size(); ++mask) {
    values[mask] = game.Value(Coalition::FromMask(n, mask));
  }
  return std::make_shared<TabularGame>(n, std::move(values));
}

double TabularGame::Evaluate(const Coalition& coalition) const {
  return values_[coalition.Mask()];
}

}  // namespace leastcore
