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


#include "leastcore/experiments.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <random>

#include "leastcore/exact.h"
#include "leastcore/game_io.h"
#include "leastcore/games.h"
#include "leastcore/text.h"

namespace leastcore {
namespace {

using Clock = std::chrono::steady_clock;

// Replaces the colon-separated token at `index` of a parameter string.
std::string ReplaceToken(const std::string& text, size_t index, double value,
                         const std::string& what) {
  std::vector<std::string> parts = SplitString(text, ':');
  if (index >= parts.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "'" + text + "' has no parameter " + std::to_string(index) +
                    " to set as " + what);
  }
  parts[index] = FormatExact(value);
  std::string out = parts[0];
  for (size_t k = 1; k < parts.size(); ++k) out += ":" + parts[k];
  return out;
}

OraclePtr DrawOnce(const GameSpec& spec, Rng& rng) {
  if (spec.family == "wvg") {
    return GenerateWeightedVotingGame(
        spec.n, WeightDistribution::Parse(spec.dist), spec.xi, rng);
  }
  if (spec.family == "graph") {
    const EdgeList edges =
        GenerateGraph(ParseGraphModel(spec.graph), spec.n, rng);
    return std::make_shared<InducedSubgraphGame>(AssignEdgeWeights(
        edges, spec.n, spec.edge_sigma, rng, spec.positive_fraction));
  }
  if (spec.family == "mcn") {
    return GenerateMcn(spec.n, spec.rules, spec.mcn_p, spec.mcn_q,
                       WeightDistribution::Parse(spec.rule_weights), rng);
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown game family '" + spec.family + "'");
}

}  // namespace

void GameSpec::Set(const std::string& name, double value) {
  if (name == "n") {
    n = static_cast<int>(std::lround(value));
  } else if (name == "xi") {
    xi = value;
  } else if (name == "edge-sigma") {
    edge_sigma = value;
  } else if (name == "positive-fraction") {
    positive_fraction = value;
  } else if (name == "rules") {
    rules = static_cast<int>(std::lround(value));
  } else if (name == "mcn-p") {
    mcn_p = value;
  } else if (name == "mcn-q") {
    mcn_q = value;
  } else if (name == "dist-a") {
    dist = ReplaceToken(dist, 1, value, name);
  } else if (name == "dist-b") {
    dist = ReplaceToken(dist, 2, value, name);
  } else if (name == "graph-arg1" || name == "graph-arg2" ||
             name == "graph-arg3") {
    graph = ReplaceToken(graph, name.back() - '0', value, name);
  } else {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown sweep parameter '" + name + "'");
  }
}

void GameSpec::Validate() const {
  static const std::vector<std::string> kFamilies = {
      "wvg", "majority", "unanimity", "singleton", "graph", "mcn", "file"};
  if (std::find(kFamilies.begin(), kFamilies.end(), family) ==
      kFamilies.end()) {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown game family '" + family + "'");
  }
  if (family == "file") {
    if (file.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "family 'file' needs --file");
    }
    return;
  }
  if (n < 1 || n > kMaxPlayers) {
    throw Error(ErrorCode::kTooManyPlayers,
                "player count " + std::to_string(n) + " outside [1, " +
                    std::to_string(kMaxPlayers) + "]");
  }
  if (family == "wvg") WeightDistribution::Parse(dist).Validate();
  if (family == "graph") ParseGraphModel(graph);
  if (family == "mcn") WeightDistribution::Parse(rule_weights).Validate();
}

OraclePtr BuildGame(const GameSpec& spec, uint64_t seed) {
  spec.Validate();
  if (spec.family == "file") return LoadGame(spec.file);
  if (spec.family == "majority") return MakeMajorityGame(spec.n);
  if (spec.family == "unanimity") return MakeUnanimityGame(spec.n);
  if (spec.family == "singleton") return MakeSingletonWinGame(spec.n);
  const Coalition grand = Coalition::Grand(spec.n);
  for (int attempt = 0; attempt < kGameResampleLimit; ++attempt) {
    Rng rng(DeriveSeed(seed, static_cast<uint64_t>(attempt)));
    OraclePtr game = DrawOnce(spec, rng);
    if (game->Value(grand) > spec.min_grand_value) {
      game->ResetCalls();
      return game;
    }
  }
  throw Error(ErrorCode::kResampleLimitExceeded,
              "no draw with v(I) > " + FormatShort(spec.min_grand_value) +
                  " in " + std::to_string(kGameResampleLimit) + " attempts");
}

std::string FormatMatrixDat(const Matrix& matrix) {
  if (matrix.rows < 0 || matrix.cols < 0 ||
      static_cast<size_t>(matrix.rows) * matrix.cols != matrix.values.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix shape");
  }
  std::string out;
  for (int r = 0; r < matrix.rows; ++r) {
    if (r > 0) out += "\n";
    for (int c = 0; c < matrix.cols; ++c) {
      out += std::to_string(c) + " " + std::to_string(r) + " " +
             FormatExact(matrix.at(r, c)) + "\n";
    }
  }
  return out;
}

Matrix ParseMatrixDat(const std::string& text) {
  std::map<std::pair<int, int>, double> cells;
  int max_x = -1;
  int max_y = -1;
  const std::vector<std::string> lines = SplitString(text, '\n');
  for (size_t k = 0; k < lines.size(); ++k) {
    const std::string line = Trim(lines[k]);
    if (line.empty()) continue;
    std::vector<std::string> parts;
    for (const std::string& p : SplitString(line, ' ')) {
      if (!p.empty()) parts.push_back(p);
    }
    if (parts.size() != 3) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(k + 1) + ": expected 'x y value'");
    }
    const int x = static_cast<int>(ParseInt(parts[0]));
    const int y = static_cast<int>(ParseInt(parts[1]));
    if (x < 0 || y < 0 || !cells.emplace(std::pair{y, x}, ParseDouble(parts[2])).second) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(k + 1) + ": bad or repeated cell");
    }
    max_x = std::max(max_x, x);
    max_y = std::max(max_y, y);
  }
  Matrix m;
  m.rows = max_y + 1;
  m.cols = max_x + 1;
  if (cells.size() != static_cast<size_t>(m.rows) * m.cols) {
    throw Error(ErrorCode::kParseError, "matrix file is missing cells");
  }
  for (const auto& [key, value] : cells) m.values.push_back(value);
  return m;
}

std::vector<double> ParseRange(const std::string& text) {
  const std::vector<std::string> parts = SplitString(text, ':');
  if (parts.size() == 1) return {ParseDouble(Trim(parts[0]))};
  if (parts.size() != 3) {
    throw Error(ErrorCode::kParseError, "range must be lo:hi:steps");
  }
  const double lo = ParseDouble(Trim(parts[0]));
  const double hi = ParseDouble(Trim(parts[1]));
  const long long steps = ParseInt(Trim(parts[2]));
  if (steps < 1 || steps > 64) {
    throw Error(ErrorCode::kInvalidArgument, "range steps must be in [1, 64]");
  }
  if (steps == 1) return {lo};
  std::vector<double> out;
  for (long long k = 0; k < steps; ++k) {
    out.push_back(lo + (hi - lo) * static_cast<double>(k) /
                           static_cast<double>(steps - 1));
  }
  return out;
}

std::vector<int> ParseIntList(const std::string& text) {
  std::vector<int> out;
  for (const std::string& part : SplitString(text, ',')) {
    out.push_back(static_cast<int>(ParseInt(Trim(part))));
  }
  return out;
}

std::vector<std::string> ParseNameList(const std::string& text) {
  std::vector<std::string> out;
  for (const std::string& part : SplitString(text, ',')) {
    if (!Trim(part).empty()) out.push_back(Trim(part));
  }
  return out;
}

CellStats Summarize(std::span<const double> samples) {
  CellStats stats;
  stats.games = static_cast<int>(samples.size());
  if (samples.empty()) return stats;
  for (double x : samples) stats.mean += x;
  stats.mean /= static_cast<double>(samples.size());
  if (samples.size() > 1) {
    double ss = 0.0;
    for (double x : samples) ss += (x - stats.mean) * (x - stats.mean);
    const double var = ss / static_cast<double>(samples.size() - 1);
    stats.standard_error = std::sqrt(var / static_cast<double>(samples.size()));
  }
  return stats;
}

CellStats MeanLeastCoreValue(const GameSpec& spec, int games,
                             const SolverConfig& config, uint64_t seed) {
  if (games < 1) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one game per cell");
  }
  std::vector<double> values;
  for (int g = 0; g < games; ++g) {
    const uint64_t game_seed = DeriveSeed(seed, static_cast<uint64_t>(g));
    const auto normalized = Normalize(BuildGame(spec, game_seed));
    SolverConfig run = config;
    run.seed = DeriveSeed(game_seed, 0x5eed);
    values.push_back(MirrorProxSolve(*normalized, run).epsilon_final);
  }
  return Summarize(values);
}

double DrawTimingXi(Rng& rng) {
  // [0.1, 0.45) has length 0.35 and (0.55, 0.9] the same.
  std::uniform_real_distribution<double> unit(0.0, 0.7);
  const double u = unit(rng);
  return u < 0.35 ? 0.1 + u : 0.55 + (u - 0.35);
}

RaceResult RaceOnce(const CharacteristicOracle& game, int k,
                    const SolverConfig& config,
                    std::span<const Coalition> evaluation, uint64_t seed,
                    RaceMatch match) {
  RaceResult result;
  result.k = k;
  Rng lp_rng(DeriveSeed(seed, static_cast<uint64_t>(k)));
  const auto lp_start = Clock::now();
  const LeastCoreLpResult lp = SampledLpLeastCore(game, k, lp_rng);
  result.lp_seconds =
      std::chrono::duration<double>(Clock::now() - lp_start).count();
  result.lp_epsilon_hat =
      EpsilonHat(lp.payoffs.values(), evaluation, game).epsilon_hat;

  SolverConfig cl = config;
  cl.seed = DeriveSeed(seed, 0xc1 + static_cast<uint64_t>(k));
  cl.holdout_size = 1;
  if (match == RaceMatch::kWallClock) {
    cl.iterations = int64_t{1} << 40;
    cl.time_limit_seconds = result.lp_seconds;
  }
  const LeastCoreResult run = MirrorProxSolve(game, cl);
  result.cl_seconds = run.wall_seconds;
  result.cl_iterations = run.iterations_run;
  result.cl_epsilon_hat =
      EpsilonHat(run.payoffs.values(), evaluation, game).epsilon_hat;
  return result;
}

}  // namespace leastcore
