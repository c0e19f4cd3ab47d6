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


#include "leastcore/iterative.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>

#include "leastcore/text.h"

namespace leastcore {
namespace {

constexpr uint64_t kTrainStream = 1;
constexpr uint64_t kHoldoutStream = 2;
constexpr uint64_t kDrawStream = 3;
constexpr uint64_t kProbeStream = 4;
constexpr uint64_t kOrderStream = 5;

using Clock = std::chrono::steady_clock;

// Coalitions stored as flattened member lists for fast dot products.
struct FlatBatch {
  std::vector<int> offsets{0};
  std::vector<int> members;
  std::vector<double> values;

  int size() const { return static_cast<int>(values.size()); }
  int coalition_size(int k) const { return offsets[k + 1] - offsets[k]; }
  void Clear() {
    offsets.assign(1, 0);
    members.clear();
    values.clear();
  }
  void Add(const Coalition& c, double value) {
    c.ForEachMember([&](int i) { members.push_back(i); });
    offsets.push_back(static_cast<int>(members.size()));
    values.push_back(value);
  }
  double Dot(int k, std::span<const double> p) const {
    double total = 0.0;
    for (int j = offsets[k]; j < offsets[k + 1]; ++j) total += p[members[j]];
    return total;
  }
  Coalition ToCoalition(int k, int n) const {
    return Coalition::FromMembers(
        n, std::span<const int>(members.data() + offsets[k],
                                members.data() + offsets[k + 1]));
  }
};

FlatBatch Flatten(std::span<const Coalition> batch,
                  std::span<const double> values) {
  if (batch.size() != values.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "one value per coalition");
  }
  FlatBatch flat;
  for (size_t k = 0; k < batch.size(); ++k) {
    if (batch[k].empty()) {
      throw Error(ErrorCode::kEmptyCoalition, "batch holds an empty coalition");
    }
    flat.Add(batch[k], values[k]);
  }
  return flat;
}

std::vector<double> FetchValues(std::span<const Coalition> batch,
                                const CharacteristicOracle& game) {
  std::vector<double> values;
  values.reserve(batch.size());
  for (const Coalition& c : batch) values.push_back(game.Value(c));
  return values;
}

SaddleMap MapOnFlat(const SaddleState& state, const FlatBatch& batch,
                    double gamma, LossAggregation aggregation) {
  const int n = static_cast<int>(state.payoffs.size());
  if (batch.size() == 0) {
    throw Error(ErrorCode::kEmptyBatch, "saddle map needs a batch");
  }
  SaddleMap map;
  map.grad_p.assign(n, 0.0);
  double weight_sum = 0.0;
  double loss_sum = 0.0;
  for (int k = 0; k < batch.size(); ++k) {
    const double d = std::max(
        0.0, batch.values[k] - state.epsilon - batch.Dot(k, state.payoffs));
    if (d == 0.0) continue;
    const int size = batch.coalition_size(k);
    const double w = d / size;
    for (int j = batch.offsets[k]; j < batch.offsets[k + 1]; ++j) {
      map.grad_p[batch.members[j]] += w;
    }
    weight_sum += w;
    loss_sum += d * d / (2.0 * size);
  }
  const double scale =
      aggregation == LossAggregation::kBatchMean ? 1.0 / batch.size() : 1.0;
  for (double& g : map.grad_p) g *= -state.mu * scale;
  map.grad_epsilon = 1.0 - state.mu * scale * weight_sum;
  map.grad_mu = -(scale * loss_sum - gamma * gamma);
  return map;
}

// Serves training batches: the cached full enumeration, or fresh samples.
class BatchProvider {
 public:
  BatchProvider(const CharacteristicOracle& game, const SolverConfig& config)
      : game_(game),
        config_(config),
        rng_(DeriveSeed(config.seed, kTrainStream)) {
    if (config.enumerate) {
      const int n = game.num_players();
      for (const Coalition& c : EnumerateCoalitions(n)) {
        full_.Add(c, game.Value(c));
      }
      calls_ = full_.size();
    }
  }

  bool enumerated() const { return config_.enumerate; }
  const FlatBatch& full() const { return full_; }
  uint64_t calls() const { return calls_; }
  uint64_t cost_per_batch() const {
    return config_.enumerate ? 0 : config_.batch_size;
  }

  const FlatBatch& Next() {
    if (config_.enumerate) return full_;
    current_.Clear();
    const int n = game_.num_players();
    for (int b = 0; b < config_.batch_size; ++b) {
      const Coalition c = SampleCoalition(n, rng_);
      current_.Add(c, game_.Value(c));
    }
    calls_ += config_.batch_size;
    return current_;
  }

 private:
  const CharacteristicOracle& game_;
  const SolverConfig& config_;
  Rng rng_;
  FlatBatch full_;
  FlatBatch current_;
  uint64_t calls_ = 0;
};

// Stops the main loop on the oracle budget or the wall-clock cap.
class StopRule {
 public:
  explicit StopRule(const SolverConfig& config)
      : config_(config), start_(Clock::now()) {}

  bool ShouldStop(uint64_t calls_used, uint64_t next_cost) const {
    if (config_.max_oracle_calls > 0 &&
        calls_used + next_cost > config_.max_oracle_calls) {
      return true;
    }
    if (config_.time_limit_seconds > 0.0 &&
        Seconds() >= config_.time_limit_seconds) {
      return true;
    }
    return false;
  }
  double Seconds() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

 private:
  const SolverConfig& config_;
  Clock::time_point start_;
};

SampleEstimate EstimateOnFlat(const FlatBatch& batch,
                              std::span<const double> p, int n) {
  SampleEstimate est;
  est.sample_size = batch.size();
  int best = 0;
  for (int k = 0; k < batch.size(); ++k) {
    const double excess = batch.values[k] - batch.Dot(k, p);
    if (k == 0 || excess > est.epsilon_hat) {
      est.epsilon_hat = excess;
      best = k;
    }
  }
  est.argmax = batch.ToCoalition(best, n);
  return est;
}

// Held-out epsilon-hat: the full enumeration when cached, otherwise a
// sample drawn from a stream disjoint from training batches.
SampleEstimate HeldOutEstimate(const CharacteristicOracle& game,
                               std::span<const double> p,
                               const SolverConfig& config,
                               const FlatBatch* full) {
  const int n = game.num_players();
  if (full != nullptr && full->size() > 0) return EstimateOnFlat(*full, p, n);
  Rng rng(DeriveSeed(config.seed, kHoldoutStream));
  const std::vector<Coalition> sample =
      SampleCoalitions(n, std::max(1, config.holdout_size), rng);
  return EpsilonHat(p, sample, game);
}

double ResolveEpsilonHi(const CharacteristicOracle& game,
                        const SolverConfig& config, const FlatBatch* full,
                        uint64_t& calls, std::vector<std::string>& notes) {
  if (config.epsilon_hi) return *config.epsilon_hi;
  double v_max = 1.0;
  if (full != nullptr && full->size() > 0) {
    for (double v : full->values) v_max = std::max(v_max, v);
    return v_max;
  }
  const int n = game.num_players();
  Rng rng(DeriveSeed(config.seed, kProbeStream));
  const int probes = 10 * n;
  for (int k = 0; k < probes; ++k) {
    v_max = std::max(v_max, game.Value(SampleCoalition(n, rng)));
  }
  calls += probes;
  notes.push_back("epsilon_hi from " + std::to_string(probes) +
                  " probe coalitions: " + FormatExact(v_max));
  return v_max;
}

Imputation Renormalized(std::vector<double> p) {
  double sum = 0.0;
  for (double& x : p) {
    x = std::max(0.0, x);
    sum += x;
  }
  for (double& x : p) x /= sum;
  return Imputation(std::move(p));
}

void MaybeTrace(const SolverConfig& config, int64_t t, double epsilon,
                double mu, double eta, std::vector<TracePoint>& trace) {
  if (config.trace_every > 0 && t % config.trace_every == 0) {
    trace.push_back({t, epsilon, mu, eta});
  }
}

}  // namespace

double StepSchedule::At(int64_t t) const {
  if (kind == Kind::kConstant) return start;
  const double frac = static_cast<double>(t) / static_cast<double>(horizon);
  return std::max(end, start * (1.0 - frac) + end * frac);
}

void StepSchedule::Validate() const {
  if (!(start > 0.0) || !(end > 0.0) || horizon < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "step schedule needs positive steps and horizon");
  }
}

std::string StepSchedule::ToString() const {
  if (kind == Kind::kConstant) return "constant:" + FormatShort(start);
  return "linear:" + FormatShort(start) + ":" + FormatShort(end) + ":" +
         std::to_string(horizon);
}

SolverConfig SolverConfig::TimingPreset() {
  SolverConfig c;
  c.iterations = 10000;
  c.batch_size = 100;
  c.schedule = StepSchedule::Linear(0.1, 0.01, 1000);
  c.gamma = 0.001;
  c.mu0 = 1000.0;
  c.prox = ProxKind::kTailored;
  return c;
}

SolverConfig SolverConfig::DefaultPreset() {
  SolverConfig c;
  c.iterations = 10000;
  c.batch_size = 1000;
  // Starts at eta = 0.1 and anneals so the last iterate settles.
  c.schedule = StepSchedule::Linear(0.1, 0.001, c.iterations);
  c.gamma = 0.01;
  c.mu0 = 1000.0;
  c.prox = ProxKind::kAdamSoftmax;
  return c;
}

void SolverConfig::Validate() const {
  if (iterations < 1) {
    throw Error(ErrorCode::kInvalidArgument, "iterations must be >= 1");
  }
  if (batch_size < 1) {
    throw Error(ErrorCode::kInvalidArgument, "batch size must be >= 1");
  }
  if (!(gamma > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "gamma must be positive");
  }
  schedule.Validate();
  if (epsilon_hi && !(*epsilon_hi >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon_hi must be >= 0");
  }
  if (mu_bar && !(*mu_bar > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "mu_bar must be positive");
  }
  if (mu0 && !(*mu0 >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "mu0 must be >= 0");
  }
}

std::vector<double> ProjectSimplexVector(std::span<const double> x) {
  if (x.empty()) throw Error(ErrorCode::kInvalidArgument, "empty vector");
  for (double v : x) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kNonFiniteInput, "simplex projection input");
    }
  }
  std::vector<double> u(x.begin(), x.end());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (size_t k = 0; k < u.size(); ++k) {
    cumulative += u[k];
    const double candidate = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (u[k] - candidate > 0.0) theta = candidate;
  }
  std::vector<double> out(x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = std::max(x[i] - theta, 0.0);
  return out;
}

Imputation ProjectSimplex(std::span<const double> x) {
  return Imputation(ProjectSimplexVector(x));
}

std::vector<double> ProjectHalfspace(std::span<const double> payoffs,
                                     const Coalition& coalition,
                                     double epsilon, double value) {
  const int size = coalition.size();
  if (size == 0) {
    throw Error(ErrorCode::kEmptyCoalition, "halfspace of the empty coalition");
  }
  std::vector<double> out(payoffs.begin(), payoffs.end());
  const double d = Deficit(payoffs, coalition, epsilon, value);
  if (d == 0.0) return out;
  const double shift = d / size;
  coalition.ForEachMember([&](int i) { out[i] += shift; });
  return out;
}

std::vector<double> ProjectHalfspace(std::span<const double> payoffs,
                                     const Coalition& coalition,
                                     double epsilon,
                                     const CharacteristicOracle& game) {
  if (coalition.empty()) {
    throw Error(ErrorCode::kEmptyCoalition, "halfspace of the empty coalition");
  }
  return ProjectHalfspace(payoffs, coalition, epsilon, game.Value(coalition));
}

std::vector<double> SubgradientBatch(std::span<const double> payoffs,
                                     double epsilon,
                                     std::span<const Coalition> batch,
                                     std::span<const double> values) {
  if (batch.empty()) {
    throw Error(ErrorCode::kEmptyBatch, "subgradient needs a batch");
  }
  const FlatBatch flat = Flatten(batch, values);
  std::vector<double> dir(payoffs.size(), 0.0);
  for (int k = 0; k < flat.size(); ++k) {
    const double d =
        std::max(0.0, flat.values[k] - epsilon - flat.Dot(k, payoffs));
    if (d == 0.0) continue;
    const double w = d / flat.coalition_size(k);
    for (int j = flat.offsets[k]; j < flat.offsets[k + 1]; ++j) {
      dir[flat.members[j]] += w;
    }
  }
  const double inv = 1.0 / static_cast<double>(flat.size());
  for (double& g : dir) g *= inv;
  return dir;
}

std::vector<double> SubgradientBatch(std::span<const double> payoffs,
                                     double epsilon,
                                     std::span<const Coalition> batch,
                                     const CharacteristicOracle& game) {
  if (batch.empty()) {
    throw Error(ErrorCode::kEmptyBatch, "subgradient needs a batch");
  }
  return SubgradientBatch(payoffs, epsilon, batch, FetchValues(batch, game));
}

SaddleMap EvaluateSaddleMap(const SaddleState& state,
                            std::span<const Coalition> batch,
                            std::span<const double> values, double gamma,
                            LossAggregation aggregation) {
  if (batch.empty()) {
    throw Error(ErrorCode::kEmptyBatch, "saddle map needs a batch");
  }
  return MapOnFlat(state, Flatten(batch, values), gamma, aggregation);
}

SaddleMap EvaluateSaddleMap(const SaddleState& state,
                            std::span<const Coalition> batch,
                            const CharacteristicOracle& game, double gamma,
                            LossAggregation aggregation) {
  if (batch.empty()) {
    throw Error(ErrorCode::kEmptyBatch, "saddle map needs a batch");
  }
  return EvaluateSaddleMap(state, batch, FetchValues(batch, game), gamma,
                           aggregation);
}

std::vector<double> Softmax(std::span<const double> logits) {
  const double top = *std::max_element(logits.begin(), logits.end());
  std::vector<double> out(logits.size());
  double sum = 0.0;
  for (size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - top);
    sum += out[i];
  }
  for (double& x : out) x /= sum;
  return out;
}

SaddleState ProxTailored(const SaddleState& state, const SaddleMap& map,
                         double eta, const SaddleBounds& bounds) {
  const size_t n = state.payoffs.size();
  std::vector<double> logits(n);
  for (size_t i = 0; i < n; ++i) {
    logits[i] = std::log(std::max(state.payoffs[i], 1e-300)) -
                eta * map.grad_p[i];
  }
  SaddleState next;
  next.payoffs = Softmax(logits);
  next.epsilon = std::clamp(state.epsilon - eta * map.grad_epsilon,
                            bounds.epsilon_lo, bounds.epsilon_hi);
  next.mu = std::clamp(state.mu - eta * map.grad_mu, 0.0, bounds.mu_bar);
  return next;
}

std::vector<double> SoftmaxPullback(std::span<const double> p,
                                    std::span<const double> grad_p) {
  double inner = 0.0;
  for (size_t i = 0; i < p.size(); ++i) inner += p[i] * grad_p[i];
  std::vector<double> out(p.size());
  for (size_t i = 0; i < p.size(); ++i) out[i] = p[i] * grad_p[i] - inner * p[i];
  return out;
}

LeastCoreResult CyclicProjectionSolve(const CharacteristicOracle& game,
                                      double epsilon,
                                      const SolverConfig& config) {
  config.Validate();
  const auto start = Clock::now();
  const int n = game.num_players();
  const uint64_t calls_before = game.calls();
  LeastCoreResult result;
  result.seed = config.seed;

  FlatBatch pool;
  const bool cyclic = n <= kMaxEnumerablePlayers;
  if (cyclic) {
    for (const Coalition& c : EnumerateCoalitions(n)) pool.Add(c, game.Value(c));
  } else {
    Rng rng(DeriveSeed(config.seed, kTrainStream));
    for (int b = 0; b < config.batch_size; ++b) {
      const Coalition c = SampleCoalition(n, rng);
      pool.Add(c, game.Value(c));
    }
    result.notes.push_back(
        "n > 20: seeded random order per epoch over " +
        std::to_string(config.batch_size) + " sampled coalitions");
  }
  std::vector<int> order(pool.size());
  std::iota(order.begin(), order.end(), 0);
  Rng order_rng(DeriveSeed(config.seed, kOrderStream));

  std::vector<double> p(n, 1.0 / n);
  int64_t t = 0;
  int since_violation = 0;
  StopRule stop(config);
  while (t < config.iterations) {
    if (!cyclic && t % pool.size() == 0) {
      std::shuffle(order.begin(), order.end(), order_rng);
    }
    if (stop.ShouldStop(0, 0)) break;
    const int k = order[t % pool.size()];
    const double d = std::max(0.0, pool.values[k] - epsilon - pool.Dot(k, p));
    ++t;
    if (d > 0.0) {
      const double shift = d / pool.coalition_size(k);
      for (int j = pool.offsets[k]; j < pool.offsets[k + 1]; ++j) {
        p[pool.members[j]] += shift;
      }
      p = ProjectSimplexVector(p);
      since_violation = 0;
    } else if (++since_violation >= pool.size()) {
      break;  // a full pass without a violated constraint
    }
    MaybeTrace(config, t, epsilon, 0.0, 1.0, result.trace);
  }
  result.iterations_run = t;
  result.payoffs = Renormalized(p);
  result.epsilon_final = epsilon;
  result.epsilon_hat =
      cyclic ? EstimateOnFlat(pool, result.payoffs.values(), n)
             : HeldOutEstimate(game, result.payoffs.values(), config, nullptr);
  result.oracle_calls = game.calls() - calls_before;
  result.wall_seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

LeastCoreResult SgdSolve(const CharacteristicOracle& game, double epsilon,
                         const SolverConfig& config) {
  config.Validate();
  const auto start = Clock::now();
  const int n = game.num_players();
  const uint64_t calls_before = game.calls();
  LeastCoreResult result;
  result.seed = config.seed;

  BatchProvider batches(game, config);
  StopRule stop(config);
  Rng draw_rng(DeriveSeed(config.seed, kDrawStream));
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<double> p(n, 1.0 / n);
  std::vector<double> chosen = p;
  double weight_total = 0.0;
  int64_t t = 0;
  for (; t < config.iterations; ++t) {
    if (stop.ShouldStop(batches.calls(), batches.cost_per_batch())) break;
    const double eta = config.schedule.At(t);
    const FlatBatch& batch = batches.Next();
    std::vector<double> dir(n, 0.0);
    for (int k = 0; k < batch.size(); ++k) {
      const double d =
          std::max(0.0, batch.values[k] - epsilon - batch.Dot(k, p));
      if (d == 0.0) continue;
      const double w = d / batch.coalition_size(k);
      for (int j = batch.offsets[k]; j < batch.offsets[k + 1]; ++j) {
        dir[batch.members[j]] += w;
      }
    }
    const double inv = 1.0 / static_cast<double>(batch.size());
    for (int i = 0; i < n; ++i) p[i] += eta * (dir[i] * inv);
    p = ProjectSimplexVector(p);
    // Weighted reservoir: P(t* = t) = eta_t / sum eta.
    weight_total += eta;
    if (unit(draw_rng) * weight_total < eta) chosen = p;
    MaybeTrace(config, t, epsilon, 0.0, eta, result.trace);
  }
  result.iterations_run = t;
  if (config.sgd_output == SgdOutput::kLastIterate || t == 0) chosen = p;
  result.payoffs = Renormalized(chosen);
  result.epsilon_final = epsilon;
  result.epsilon_hat = HeldOutEstimate(
      game, result.payoffs.values(), config,
      batches.enumerated() ? &batches.full() : nullptr);
  result.oracle_calls = game.calls() - calls_before;
  result.wall_seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

LeastCoreResult MirrorProxSolve(const CharacteristicOracle& game,
                                const SolverConfig& config) {
  config.Validate();
  const auto start = Clock::now();
  const int n = game.num_players();
  const uint64_t calls_before = game.calls();
  LeastCoreResult result;
  result.seed = config.seed;

  BatchProvider batches(game, config);
  uint64_t extra_calls = 0;
  SaddleBounds bounds;
  bounds.epsilon_lo = 0.0;
  bounds.epsilon_hi = ResolveEpsilonHi(
      game, config, batches.enumerated() ? &batches.full() : nullptr,
      extra_calls, result.notes);
  bounds.mu_bar = config.mu_bar.value_or(n / config.gamma);
  const double mu0 = config.mu0 ? std::min(*config.mu0, bounds.mu_bar)
                                : std::min(bounds.mu_bar, 1000.0);

  SaddleState x{std::vector<double>(n, 1.0 / n), bounds.epsilon_hi, mu0};
  const bool adam = config.prox == ProxKind::kAdamSoftmax;
  std::vector<double> logits(n, 0.0);
  std::vector<double> moment1(n, 0.0);
  std::vector<double> moment2(n, 0.0);
  int64_t adam_steps = 0;
  constexpr double kBeta1 = 0.9;
  constexpr double kBeta2 = 0.999;
  constexpr double kAdamEps = 1e-8;

  // Prox from `base` along the map evaluated at `eval`.
  auto step = [&](const SaddleState& base, const std::vector<double>& base_logits,
                  const SaddleState& eval, const SaddleMap& map, double eta,
                  std::vector<double>& out_logits) -> SaddleState {
    if (!adam) return ProxTailored(base, map, eta, bounds);
    const std::vector<double> grad_s = SoftmaxPullback(eval.payoffs, map.grad_p);
    ++adam_steps;
    const double c1 = 1.0 - std::pow(kBeta1, static_cast<double>(adam_steps));
    const double c2 = 1.0 - std::pow(kBeta2, static_cast<double>(adam_steps));
    out_logits.resize(n);
    for (int i = 0; i < n; ++i) {
      moment1[i] = kBeta1 * moment1[i] + (1.0 - kBeta1) * grad_s[i];
      moment2[i] = kBeta2 * moment2[i] + (1.0 - kBeta2) * grad_s[i] * grad_s[i];
      out_logits[i] = base_logits[i] - eta * (moment1[i] / c1) /
                                           (std::sqrt(moment2[i] / c2) + kAdamEps);
    }
    SaddleState next;
    next.payoffs = Softmax(out_logits);
    next.epsilon = std::clamp(base.epsilon - eta * map.grad_epsilon,
                              bounds.epsilon_lo, bounds.epsilon_hi);
    next.mu = std::clamp(base.mu - eta * map.grad_mu, 0.0, bounds.mu_bar);
    return next;
  };

  std::vector<double> p_sum(n, 0.0);
  double eta_sum = 0.0;
  StopRule stop(config);
  std::vector<double> mid_logits;
  std::vector<double> next_logits;
  int64_t t = 0;
  for (; t < config.iterations; ++t) {
    if (stop.ShouldStop(batches.calls() + extra_calls,
                        2 * batches.cost_per_batch())) {
      break;
    }
    const double eta = config.schedule.At(t);
    const SaddleMap f_x =
        MapOnFlat(x, batches.Next(), config.gamma, config.aggregation);
    const SaddleState mid = step(x, logits, x, f_x, eta, mid_logits);
    const SaddleMap f_mid =
        MapOnFlat(mid, batches.Next(), config.gamma, config.aggregation);
    x = step(x, logits, mid, f_mid, eta, next_logits);
    if (adam) logits.swap(next_logits);
    for (int i = 0; i < n; ++i) p_sum[i] += eta * x.payoffs[i];
    eta_sum += eta;
    MaybeTrace(config, t, x.epsilon, x.mu, eta, result.trace);
  }
  result.iterations_run = t;
  if (eta_sum > 0.0) {
    for (double& v : p_sum) v /= eta_sum;
    result.payoffs = Renormalized(std::move(p_sum));
  } else {
    result.payoffs = Imputation::Uniform(n);
    result.notes.push_back("budget allowed no iterations");
  }
  result.epsilon_final = x.epsilon;
  result.mu_final = x.mu;
  result.epsilon_hat = HeldOutEstimate(
      game, result.payoffs.values(), config,
      batches.enumerated() ? &batches.full() : nullptr);
  result.oracle_calls = game.calls() - calls_before;
  result.wall_seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

LeastCoreResult AdamSoftmaxSolve(const CharacteristicOracle& game,
                                 SolverConfig config) {
  config.prox = ProxKind::kAdamSoftmax;
  return MirrorProxSolve(game, config);
}

LeastCoreResult LcvViaBisection(const CharacteristicOracle& game,
                                FeasibilitySolver inner, double tolerance,
                                const SolverConfig& config) {
  if (!(tolerance > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tolerance must be positive");
  }
  config.Validate();
  const auto start = Clock::now();
  const uint64_t calls_before = game.calls();
  auto run = [&](double epsilon) {
    SolverConfig probe = config;
    if (config.max_oracle_calls > 0) {
      const uint64_t used = game.calls() - calls_before;
      if (used >= config.max_oracle_calls) {
        throw Error(ErrorCode::kBudgetExhausted,
                    "bisection ran out of oracle calls");
      }
      probe.max_oracle_calls = config.max_oracle_calls - used;
    }
    return inner == FeasibilitySolver::kCyclic
               ? CyclicProjectionSolve(game, epsilon, probe)
               : SgdSolve(game, epsilon, probe);
  };
  auto feasible = [&](const LeastCoreResult& r, double epsilon) {
    return r.epsilon_hat.epsilon_hat - epsilon <= config.gamma;
  };

  double lo = 0.0;
  double hi = config.epsilon_hi.value_or(1.0);
  LeastCoreResult best = run(hi);
  best.epsilon_final = hi;
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    LeastCoreResult r = run(mid);
    if (feasible(r, mid)) {
      hi = mid;
      best = std::move(r);
      best.epsilon_final = mid;
    } else {
      lo = mid;
    }
  }
  if (config.max_oracle_calls > 0 &&
      game.calls() - calls_before > config.max_oracle_calls) {
    throw Error(ErrorCode::kBudgetExhausted,
                "bisection ran out of oracle calls");
  }
  best.oracle_calls = game.calls() - calls_before;
  best.wall_seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  return best;
}

CoreCertificate CheckCoreCertificate(const CharacteristicOracle& game,
                                     std::span<const double> payoffs,
                                     double epsilon, double gamma) {
  const int n = game.num_players();
  CoreCertificate cert;
  cert.relaxed_epsilon = epsilon + std::sqrt(2.0 * n) * gamma;
  cert.losses_within_gamma = true;
  bool first = true;
  for (const Coalition& c : EnumerateCoalitions(n)) {
    const double v = game.Value(c);
    const double excess = v - c.Dot(payoffs);
    cert.max_excess = first ? excess : std::max(cert.max_excess, excess);
    first = false;
    if (CoalitionLoss(payoffs, c, epsilon, v) > gamma * gamma) {
      cert.losses_within_gamma = false;
    }
    if (excess > cert.relaxed_epsilon) ++cert.relaxed_violations;
  }
  return cert;
}

}  // namespace leastcore
