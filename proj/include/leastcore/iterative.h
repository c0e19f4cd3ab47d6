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


// Iterative least-core solvers: cyclic halfspace projections, projected
// stochastic subgradient descent for a fixed epsilon, and the Core
// Lagrangian saddle-point method driven by stochastic mirror-prox
// (extragradient) steps.

#ifndef LEASTCORE_ITERATIVE_H_
#define LEASTCORE_ITERATIVE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "leastcore/game_core.h"

namespace leastcore {

struct StepSchedule {
  enum class Kind { kConstant, kLinear };

  Kind kind = Kind::kConstant;
  double start = 0.1;
  double end = 0.1;
  int64_t horizon = 1;

  static StepSchedule Constant(double eta) {
    return {Kind::kConstant, eta, eta, 1};
  }
  // eta_t = max(end, start (1 - t/h) + end (t/h)).
  static StepSchedule Linear(double start, double end, int64_t horizon) {
    return {Kind::kLinear, start, end, horizon};
  }

  double At(int64_t t) const;
  void Validate() const;
  std::string ToString() const;
};

enum class ProxKind { kTailored, kAdamSoftmax };
enum class SgdOutput { kWeightedDraw, kLastIterate };
// How per-coalition terms of a batch are combined in the saddle map.
enum class LossAggregation { kBatchSum, kBatchMean };

struct SolverConfig {
  int64_t iterations = 10000;
  int batch_size = 1000;
  // Use every nonempty coalition as the batch (n <= 20).
  bool enumerate = false;
  StepSchedule schedule = StepSchedule::Constant(0.1);
  double gamma = 0.01;
  uint64_t seed = 0;
  ProxKind prox = ProxKind::kAdamSoftmax;
  LossAggregation aggregation = LossAggregation::kBatchSum;
  std::optional<double> epsilon_hi;
  std::optional<double> mu_bar;  // default n / gamma
  std::optional<double> mu0;     // default min(mu_bar, 1000)
  // Held-out coalitions for the epsilon-hat estimate; unused when the
  // estimate can run over the full enumeration.
  int holdout_size = 10000;
  int64_t trace_every = 0;
  SgdOutput sgd_output = SgdOutput::kWeightedDraw;
  // Training-side oracle budget (0 = unlimited) and wall-clock cap.
  uint64_t max_oracle_calls = 0;
  double time_limit_seconds = 0.0;

  // Runtime-experiment hyperparameters: eta 0.1 -> 0.01 over 1000 steps,
  // B = 100, mu0 = 1000, gamma = 0.001, T = 10^4, tailored prox.
  static SolverConfig TimingPreset();
  // Hyperparameters for every other experiment: eta starts at 0.1,
  // B = 1000, mu0 = 1000, gamma = 0.01, T = 10^4, softmax + Adam.
  static SolverConfig DefaultPreset();

  void Validate() const;
};

struct TracePoint {
  int64_t iteration = 0;
  double epsilon = 0.0;
  double mu = 0.0;
  double step = 0.0;
};

struct LeastCoreResult {
  Imputation payoffs = Imputation::Uniform(1);
  double epsilon_final = 0.0;
  double mu_final = 0.0;
  SampleEstimate epsilon_hat;
  std::vector<TracePoint> trace;
  uint64_t oracle_calls = 0;
  uint64_t seed = 0;
  int64_t iterations_run = 0;
  double wall_seconds = 0.0;
  std::vector<std::string> notes;
};

// Euclidean projection onto the probability simplex (sort and threshold).
// Throws kNonFiniteInput.
Imputation ProjectSimplex(std::span<const double> x);
std::vector<double> ProjectSimplexVector(std::span<const double> x);

// p + (d_c / |C|) c. Throws kEmptyCoalition.
std::vector<double> ProjectHalfspace(std::span<const double> payoffs,
                                     const Coalition& coalition,
                                     double epsilon, double value);
std::vector<double> ProjectHalfspace(std::span<const double> payoffs,
                                     const Coalition& coalition,
                                     double epsilon,
                                     const CharacteristicOracle& game);

// Averaged descent direction (1/B) sum_C (d_c / |C|) c, the negated
// gradient of the batch-mean coalition loss. Throws kEmptyBatch.
std::vector<double> SubgradientBatch(std::span<const double> payoffs,
                                     double epsilon,
                                     std::span<const Coalition> batch,
                                     std::span<const double> values);
std::vector<double> SubgradientBatch(std::span<const double> payoffs,
                                     double epsilon,
                                     std::span<const Coalition> batch,
                                     const CharacteristicOracle& game);

struct SaddleState {
  std::vector<double> payoffs;
  double epsilon = 0.0;
  double mu = 0.0;
};

struct SaddleBounds {
  double epsilon_lo = 0.0;
  double epsilon_hi = 1.0;
  double mu_bar = 1.0;
};

// Stacked descent directions (grad_p L, grad_eps L, -grad_mu L).
struct SaddleMap {
  std::vector<double> grad_p;
  double grad_epsilon = 0.0;
  double grad_mu = 0.0;
};

SaddleMap EvaluateSaddleMap(const SaddleState& state,
                            std::span<const Coalition> batch,
                            std::span<const double> values, double gamma,
                            LossAggregation aggregation =
                                LossAggregation::kBatchSum);
SaddleMap EvaluateSaddleMap(const SaddleState& state,
                            std::span<const Coalition> batch,
                            const CharacteristicOracle& game, double gamma,
                            LossAggregation aggregation =
                                LossAggregation::kBatchSum);

// Entropic step on p, clipped gradient steps on eps and mu.
SaddleState ProxTailored(const SaddleState& state, const SaddleMap& map,
                         double eta, const SaddleBounds& bounds);

// J_softmax(p)^T g = p * g - (p^T g) p.
std::vector<double> SoftmaxPullback(std::span<const double> p,
                                    std::span<const double> grad_p);
std::vector<double> Softmax(std::span<const double> logits);

// For a fixed epsilon: alternate halfspace and simplex projections starting
// from the uniform imputation; iterations counts single projection steps.
LeastCoreResult CyclicProjectionSolve(const CharacteristicOracle& game,
                                      double epsilon,
                                      const SolverConfig& config);

// Projected stochastic subgradient descent for a fixed epsilon.
LeastCoreResult SgdSolve(const CharacteristicOracle& game, double epsilon,
                         const SolverConfig& config);

// Core Lagrangian via mirror-prox with the prox selected by config.prox.
// The game must be normalized.
LeastCoreResult MirrorProxSolve(const CharacteristicOracle& game,
                                const SolverConfig& config);

// Same dynamics with p = softmax(s) and Adam on the logits.
LeastCoreResult AdamSoftmaxSolve(const CharacteristicOracle& game,
                                 SolverConfig config);

enum class FeasibilitySolver { kCyclic, kSgd };

// Bisection on epsilon in [0, eps_hi]; a probe is feasible when the inner
// solver's held-out maximum deficit is below gamma. Throws
// kBudgetExhausted when config.max_oracle_calls runs out.
LeastCoreResult LcvViaBisection(const CharacteristicOracle& game,
                                FeasibilitySolver inner, double tolerance,
                                const SolverConfig& config);

struct CoreCertificate {
  bool losses_within_gamma = false;  // every l_c <= gamma^2
  double relaxed_epsilon = 0.0;      // eps + sqrt(2n) gamma
  int relaxed_violations = 0;        // constraints broken at relaxed_epsilon
  double max_excess = 0.0;
};

// Full-enumeration check (n <= 20) of p against the relaxed core.
CoreCertificate CheckCoreCertificate(const CharacteristicOracle& game,
                                     std::span<const double> payoffs,
                                     double epsilon, double gamma);

}  // namespace leastcore

#endif  // LEASTCORE_ITERATIVE_H_
