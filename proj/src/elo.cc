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


#include "leastcore/elo.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <unordered_map>

#include "leastcore/text.h"

namespace leastcore {
namespace {

constexpr double kEloScale = 400.0;

// -ln sigma(x), stable for large |x|.
double NegLogSigmoid(double x) {
  return x >= 0.0 ? std::log1p(std::exp(-x)) : -x + std::log1p(std::exp(x));
}

struct PairCounts {
  int i;
  int j;
  double wins_i;  // i beat j
  double wins_j;
};

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int Find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void Unite(int a, int b) { parent_[Find(a)] = Find(b); }

 private:
  std::vector<int> parent_;
};

// Every member reaches every other along "beat" edges and reversed edges.
bool StronglyConnected(const std::vector<int>& members,
                       const std::vector<PairCounts>& pairs,
                       const std::vector<int>& component, int label) {
  if (members.size() < 2) return true;
  std::unordered_map<int, std::vector<int>> forward;
  std::unordered_map<int, std::vector<int>> backward;
  for (const PairCounts& p : pairs) {
    if (component[p.i] != label) continue;
    if (p.wins_i > 0) {
      forward[p.i].push_back(p.j);
      backward[p.j].push_back(p.i);
    }
    if (p.wins_j > 0) {
      forward[p.j].push_back(p.i);
      backward[p.i].push_back(p.j);
    }
  }
  auto reaches_all = [&](std::unordered_map<int, std::vector<int>>& adj) {
    std::unordered_map<int, bool> seen;
    std::vector<int> stack{members.front()};
    seen[members.front()] = true;
    size_t count = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v : adj[u]) {
        if (!seen[v]) {
          seen[v] = true;
          ++count;
          stack.push_back(v);
        }
      }
    }
    return count == members.size();
  };
  return reaches_all(forward) && reaches_all(backward);
}

double PairLogLikelihood(const std::vector<PairCounts>& pairs,
                         const std::vector<double>& log_pi) {
  double total = 0.0;
  for (const PairCounts& p : pairs) {
    const double x = log_pi[p.i] - log_pi[p.j];
    total -= p.wins_i * NegLogSigmoid(x) + p.wins_j * NegLogSigmoid(-x);
  }
  return total;
}

std::vector<double> AverageRanks(std::span<const double> x) {
  std::vector<int> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return x[a] < x[b]; });
  std::vector<double> ranks(x.size());
  size_t k = 0;
  while (k < order.size()) {
    size_t end = k + 1;
    while (end < order.size() && x[order[end]] == x[order[k]]) ++end;
    const double rank = 0.5 * static_cast<double>(k + end - 1) + 1.0;
    for (size_t m = k; m < end; ++m) ranks[order[m]] = rank;
    k = end;
  }
  return ranks;
}

}  // namespace

void ValidateMatches(std::span<const MatchRecord> matches, int num_models) {
  for (const MatchRecord& m : matches) {
    if (m.model_a < 0 || m.model_b < 0 || m.model_a >= num_models ||
        m.model_b >= num_models) {
      throw Error(ErrorCode::kInvalidArgument, "match model index out of range");
    }
    if (m.model_a == m.model_b) {
      throw Error(ErrorCode::kInvalidArgument, "a model cannot play itself");
    }
  }
}

double EloProb(double r_i, double r_j) {
  return 1.0 / (1.0 + std::exp(-(r_i - r_j) / kEloScale));
}

RatingVector MmFit(std::span<const MatchRecord> matches, int num_models,
                   const MmOptions& options) {
  if (num_models < 1) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one model");
  }
  ValidateMatches(matches, num_models);
  RatingVector result;
  result.ratings.assign(num_models, 0.0);

  std::map<std::pair<int, int>, size_t> index;
  std::vector<PairCounts> pairs;
  for (const MatchRecord& m : matches) {
    const int i = std::min(m.model_a, m.model_b);
    const int j = std::max(m.model_a, m.model_b);
    auto [it, inserted] = index.try_emplace({i, j}, pairs.size());
    if (inserted) pairs.push_back({i, j, 0.0, 0.0});
    const int winner = m.a_wins ? m.model_a : m.model_b;
    (winner == i ? pairs[it->second].wins_i : pairs[it->second].wins_j) += 1.0;
  }

  DisjointSets sets(num_models);
  for (const PairCounts& p : pairs) sets.Unite(p.i, p.j);
  std::vector<int> component(num_models);
  std::map<int, std::vector<int>> members;
  for (int i = 0; i < num_models; ++i) {
    component[i] = sets.Find(i);
    members[component[i]].push_back(i);
  }
  result.disconnected = members.size() > 1;

  for (const auto& [label, group] : members) {
    if (!StronglyConnected(group, pairs, component, label)) {
      result.smoothed = true;
      for (PairCounts& p : pairs) {
        if (component[p.i] == label) {
          p.wins_i += 0.5;
          p.wins_j += 0.5;
        }
      }
    }
  }

  std::vector<double> wins(num_models, 0.0);
  for (const PairCounts& p : pairs) {
    wins[p.i] += p.wins_i;
    wins[p.j] += p.wins_j;
  }
  std::vector<double> log_pi(num_models, 0.0);
  std::vector<double> denom(num_models);
  std::vector<double> next(num_models);
  for (int sweep = 0; sweep < options.max_sweeps && !pairs.empty(); ++sweep) {
    std::fill(denom.begin(), denom.end(), 0.0);
    for (const PairCounts& p : pairs) {
      const double n_ij = p.wins_i + p.wins_j;
      const double top = std::max(log_pi[p.i], log_pi[p.j]);
      // n_ij / (pi_i + pi_j), scaled by exp(-top) for range safety.
      const double scaled = n_ij / (std::exp(log_pi[p.i] - top) +
                                    std::exp(log_pi[p.j] - top));
      denom[p.i] += scaled * std::exp(-top);
      denom[p.j] += scaled * std::exp(-top);
    }
    for (int i = 0; i < num_models; ++i) {
      next[i] = denom[i] > 0.0 ? std::log(wins[i] / denom[i]) : 0.0;
    }
    for (const auto& [label, group] : members) {
      double mean = 0.0;
      for (int i : group) mean += next[i];
      mean /= static_cast<double>(group.size());
      for (int i : group) next[i] -= mean;
    }
    double change = 0.0;
    for (int i = 0; i < num_models; ++i) {
      change = std::max(change, std::abs(next[i] - log_pi[i]));
    }
    log_pi.swap(next);
    result.sweeps = sweep + 1;
    if (options.log_likelihood_trace != nullptr) {
      options.log_likelihood_trace->push_back(PairLogLikelihood(pairs, log_pi));
    }
    if (change <= options.tolerance) break;
  }
  for (int i = 0; i < num_models; ++i) {
    result.ratings[i] = kEloScale * log_pi[i];
    if (!std::isfinite(result.ratings[i])) {
      throw Error(ErrorCode::kNumericalBreakdown, "MM produced a non-finite rating");
    }
  }
  return result;
}

double LogLikelihood(std::span<const double> ratings,
                     std::span<const MatchRecord> matches) {
  ValidateMatches(matches, static_cast<int>(ratings.size()));
  double total = 0.0;
  for (const MatchRecord& m : matches) {
    const int w = m.a_wins ? m.model_a : m.model_b;
    const int l = m.a_wins ? m.model_b : m.model_a;
    total -= NegLogSigmoid((ratings[w] - ratings[l]) / kEloScale);
  }
  return total;
}

double CrossEntropy(std::span<const double> ratings,
                    std::span<const MatchRecord> matches) {
  if (matches.empty()) {
    throw Error(ErrorCode::kEmptySample, "cross entropy over no matches");
  }
  return -LogLikelihood(ratings, matches) / static_cast<double>(matches.size());
}

double SpearmanCorrelation(std::span<const double> x,
                           std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "spearman inputs differ in size");
  }
  if (x.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "spearman needs two points");
  }
  const std::vector<double> rx = AverageRanks(x);
  const std::vector<double> ry = AverageRanks(y);
  const double mean = 0.5 * static_cast<double>(x.size() + 1);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t k = 0; k < x.size(); ++k) {
    sxy += (rx[k] - mean) * (ry[k] - mean);
    sxx += (rx[k] - mean) * (rx[k] - mean);
    syy += (ry[k] - mean) * (ry[k] - mean);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

std::vector<MatchRecord> GenerateMatches(std::span<const double> ratings,
                                         int count, Rng& rng) {
  const int m = static_cast<int>(ratings.size());
  if (m < 2) throw Error(ErrorCode::kInvalidArgument, "need two models");
  if (count < 0) throw Error(ErrorCode::kInvalidArgument, "negative count");
  std::uniform_int_distribution<int> first(0, m - 1);
  std::uniform_int_distribution<int> second(0, m - 2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<MatchRecord> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    const int a = first(rng);
    int b = second(rng);
    if (b >= a) ++b;
    out.push_back({a, b, unit(rng) < EloProb(ratings[a], ratings[b])});
  }
  return out;
}

MatchTable ParseMatchCsv(const std::string& text) {
  MatchTable table;
  std::unordered_map<std::string, int> ids;
  auto id_of = [&](const std::string& name) {
    auto [it, inserted] =
        ids.try_emplace(name, static_cast<int>(table.model_names.size()));
    if (inserted) table.model_names.push_back(name);
    return it->second;
  };
  const std::vector<std::string> lines = SplitString(text, '\n');
  bool header = false;
  for (size_t k = 0; k < lines.size(); ++k) {
    const std::string line = Trim(lines[k]);
    if (line.empty()) continue;
    const std::vector<std::string> cells = SplitString(line, ',');
    const std::string where = "line " + std::to_string(k + 1);
    if (!header) {
      if (cells.size() != 3 || Trim(cells[0]) != "model_a" ||
          Trim(cells[1]) != "model_b" || Trim(cells[2]) != "winner") {
        throw Error(ErrorCode::kParseError,
                    where + ": expected header model_a,model_b,winner");
      }
      header = true;
      continue;
    }
    if (cells.size() != 3) {
      throw Error(ErrorCode::kParseError, where + ": expected 3 cells");
    }
    std::string winner = Trim(cells[2]);
    for (char& ch : winner) {
      ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    }
    if (winner != "a" && winner != "b") {
      throw Error(ErrorCode::kParseError, where + ": winner must be a or b");
    }
    const std::string a = Trim(cells[0]);
    const std::string b = Trim(cells[1]);
    if (a.empty() || b.empty() || a == b) {
      throw Error(ErrorCode::kParseError, where + ": bad model pair");
    }
    const int ia = id_of(a);
    const int ib = id_of(b);
    table.matches.push_back({ia, ib, winner == "a"});
  }
  if (!header) throw Error(ErrorCode::kParseError, "empty match file");
  return table;
}

MatchTable LoadMatchCsv(const std::string& path) {
  return ParseMatchCsv(ReadTextFile(path));
}

std::string FormatMatchCsv(const MatchTable& table) {
  ValidateMatches(table.matches, table.num_models());
  std::string out = "model_a,model_b,winner\n";
  for (const MatchRecord& m : table.matches) {
    out += table.model_names[m.model_a] + "," + table.model_names[m.model_b] +
           (m.a_wins ? ",a\n" : ",b\n");
  }
  return out;
}

ArenaValuationGame::ArenaValuationGame(std::vector<MatchRecord> train,
                                       std::vector<MatchRecord> test,
                                       int num_models, MmOptions options)
    : CharacteristicOracle(static_cast<int>(train.size())),
      train_(std::move(train)),
      test_(std::move(test)),
      num_models_(num_models),
      options_(options) {
  if (train_.empty()) {
    throw Error(ErrorCode::kEmptySample, "arena game needs training matches");
  }
  if (test_.empty()) {
    throw Error(ErrorCode::kEmptySample, "arena game needs test matches");
  }
  ValidateMatches(train_, num_models_);
  ValidateMatches(test_, num_models_);
  options_.log_likelihood_trace = nullptr;
  baseline_ = CrossEntropy(std::vector<double>(num_models_, 0.0), test_);
}

double ArenaValuationGame::Evaluate(const Coalition& coalition) const {
  if (coalition.empty()) return 0.0;
  std::vector<MatchRecord> subset;
  subset.reserve(coalition.size());
  coalition.ForEachMember([&](int k) { subset.push_back(train_[k]); });
  const RatingVector fit = MmFit(subset, num_models_, options_);
  return baseline_ - CrossEntropy(fit.ratings, test_);
}

}  // namespace leastcore
