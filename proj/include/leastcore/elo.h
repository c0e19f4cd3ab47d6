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


#ifndef LEASTCORE_ELO_H_
#define LEASTCORE_ELO_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "leastcore/game_core.h"

namespace leastcore {

// One pairwise comparison; `a_wins` is false when model_b won.
struct MatchRecord {
  int model_a = 0;
  int model_b = 0;
  bool a_wins = true;

  bool operator==(const MatchRecord&) const = default;
};

struct MatchTable {
  std::vector<std::string> model_names;
  std::vector<MatchRecord> matches;

  int num_models() const { return static_cast<int>(model_names.size()); }
};

// Throws kInvalidArgument on self-matches or out-of-range indices.
void ValidateMatches(std::span<const MatchRecord> matches, int num_models);

// sigma((r_i - r_j) / 400) with the natural logistic.
double EloProb(double r_i, double r_j);

// Ratings in Elo units with strengths pi = exp(r / 400).
struct RatingVector {
  std::vector<double> ratings;
  int sweeps = 0;
  bool smoothed = false;      // a 0.5 pseudo-win split was applied
  bool disconnected = false;  // fitted per component, each gauged separately
};

struct MmOptions {
  int max_sweeps = 20000;
  // Stops once no log-strength moves more than this in a sweep.
  double tolerance = 1e-12;
  // If set, receives the log-likelihood after every sweep.
  std::vector<double>* log_likelihood_trace = nullptr;
};

// Bradley-Terry maximum likelihood by minorization-maximization,
// pi_i <- W_i / sum_j n_ij / (pi_i + pi_j), geometric-mean-one gauge per
// connected component. Components whose win graph is not strongly connected
// get half a pseudo-win each way on every observed pair.
RatingVector MmFit(std::span<const MatchRecord> matches, int num_models,
                   const MmOptions& options = {});

// Bradley-Terry log-likelihood of the matches under the ratings.
double LogLikelihood(std::span<const double> ratings,
                     std::span<const MatchRecord> matches);

// Mean of -ln EloProb(winner, loser). Throws kEmptySample on no matches.
double CrossEntropy(std::span<const double> ratings,
                    std::span<const MatchRecord> matches);

// Spearman rank correlation with average ranks for ties.
double SpearmanCorrelation(std::span<const double> x,
                           std::span<const double> y);

// Uniform random pairs, winner drawn from EloProb of the true ratings.
std::vector<MatchRecord> GenerateMatches(std::span<const double> ratings,
                                         int count, Rng& rng);

// CSV with header model_a,model_b,winner and winner in {a, b}; names are
// indexed in first-appearance order.
MatchTable ParseMatchCsv(const std::string& text);
MatchTable LoadMatchCsv(const std::string& path);
std::string FormatMatchCsv(const MatchTable& table);

// Players are training matches. v(C) = CE(uniform) - CE(fit on C) over the
// test matches, i.e. (2 - CE) shifted so that v(empty) = 0.
class ArenaValuationGame : public CharacteristicOracle {
 public:
  ArenaValuationGame(std::vector<MatchRecord> train,
                     std::vector<MatchRecord> test, int num_models,
                     MmOptions options = {});

  int num_models() const { return num_models_; }
  double baseline_cross_entropy() const { return baseline_; }

 protected:
  double Evaluate(const Coalition& coalition) const override;

 private:
  std::vector<MatchRecord> train_;
  std::vector<MatchRecord> test_;
  int num_models_;
  MmOptions options_;
  double baseline_;
};

}  // namespace leastcore

#endif  // LEASTCORE_ELO_H_
