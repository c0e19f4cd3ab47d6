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


// Building blocks shared by the command-line driver and the acceptance
// suite: parameterized game families, the heatmap matrix file format, and
// the sampled-LP versus CL race.

#ifndef LEASTCORE_EXPERIMENTS_H_
#define LEASTCORE_EXPERIMENTS_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "leastcore/game_core.h"
#include "leastcore/iterative.h"

namespace leastcore {

// A game family plus the parameters its generator needs.
struct GameSpec {
  // wvg, majority, unanimity, singleton, graph, mcn or file.
  std::string family = "wvg";
  int n = 10;
  std::string dist = "uniform-int:1:100";
  double xi = 0.5;
  std::string graph = "er:0.5";
  double edge_sigma = 1.0;
  double positive_fraction = 0.6;
  int rules = 10;
  double mcn_p = 0.3;
  double mcn_q = 0.1;
  std::string rule_weights = "gaussian:0:1";
  std::string file;
  // Random draws are repeated until v(I) exceeds this.
  double min_grand_value = 0.0;

  // Numeric knobs a sweep may vary: n, xi, edge-sigma, positive-fraction,
  // rules, mcn-p, mcn-q, dist-a, dist-b, graph-arg1, graph-arg2,
  // graph-arg3. Throws kInvalidArgument for unknown names.
  void Set(const std::string& name, double value);
  void Validate() const;
};

inline constexpr int kGameResampleLimit = 1000;

// Raw (unnormalized) game for the spec; deterministic in `seed`.
OraclePtr BuildGame(const GameSpec& spec, uint64_t seed);

// Row-major grid of cell values; rows index the y axis.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> values;

  double at(int row, int col) const { return values[row * cols + col]; }
  bool operator==(const Matrix&) const = default;
};

// One `x_index y_index value` line per cell, a blank line between rows,
// 17 significant digits.
std::string FormatMatrixDat(const Matrix& matrix);
Matrix ParseMatrixDat(const std::string& text);

// `lo:hi:steps` inclusive grid, or a single value.
std::vector<double> ParseRange(const std::string& text);
// Comma-separated integers.
std::vector<int> ParseIntList(const std::string& text);
std::vector<std::string> ParseNameList(const std::string& text);

struct CellStats {
  double mean = 0.0;
  double standard_error = 0.0;
  int games = 0;
};

CellStats Summarize(std::span<const double> samples);

// Least-core value of `games` seeded draws from `spec`, solved by
// mirror-prox on the normalized game.
CellStats MeanLeastCoreValue(const GameSpec& spec, int games,
                             const SolverConfig& config, uint64_t seed);

// Quota fraction drawn uniformly from [0.1, 0.9] minus [0.45, 0.55].
double DrawTimingXi(Rng& rng);

enum class RaceMatch { kWallClock, kIterations };

struct RaceResult {
  int k = 0;
  double lp_seconds = 0.0;
  double lp_epsilon_hat = 0.0;
  double cl_seconds = 0.0;
  double cl_epsilon_hat = 0.0;
  int64_t cl_iterations = 0;
};

// Sampled LP with k rows, then CL on the same normalized game for the LP's
// wall time (or for config.iterations steps), both scored on `evaluation`.
RaceResult RaceOnce(const CharacteristicOracle& game, int k,
                    const SolverConfig& config,
                    std::span<const Coalition> evaluation, uint64_t seed,
                    RaceMatch match);

}  // namespace leastcore

#endif  // LEASTCORE_EXPERIMENTS_H_
