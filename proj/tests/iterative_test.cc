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
#include "leastcore/iterative.h"

namespace leastcore {
namespace {

std::vector<double> RandomSimplexPoint(int n, Rng& rng) {
  std::uniform_real_distribution<double> unit(1e-12, 1.0);
  std::vector<double> p(n);
  for (double& x : p) x = -std::log(unit(rng));
  const double sum = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& x : p) x /= sum;
  return p;
}

std::shared_ptr<TabularGame> RandomTabular(int n, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> values(size_t{1} << n, 0.0);
  for (size_t m = 1; m < values.size(); ++m) values[m] = unit(rng);
  values.back() = 1.0;
  return std::make_shared<TabularGame>(n, std::move(values));
}

std::vector<Coalition> AllCoalitions(int n) {
  std::vector<Coalition> out;
  for (const Coalition& c : EnumerateCoalitions(n)) out.push_back(c);
  return out;
}

// Sum of coalition losses plus the Lagrangian terms.
double Lagrangian(const SaddleState& s, std::span<const Coalition> batch,
                  std::span<const double> values, double gamma) {
  double loss = 0.0;
  for (size_t k = 0; k < batch.size(); ++k) {
    loss += CoalitionLoss(s.payoffs, batch[k], s.epsilon, values[k]);
  }
  return s.epsilon + s.mu * (loss - gamma * gamma);
}

TEST_CASE("simplex projection satisfies the optimality conditions") {
  Rng rng(1);
  std::normal_distribution<double> normal(0.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 9;
    std::vector<double> x(n);
    for (double& v : x) v = normal(rng);
    const std::vector<double> p = ProjectSimplexVector(x);
    CHECK(std::accumulate(p.begin(), p.end(), 0.0) == doctest::Approx(1.0));
    // (x - p) . (e_j - p) <= 0 for every vertex e_j.
    double xp = 0.0;
    for (int i = 0; i < n; ++i) xp += (x[i] - p[i]) * p[i];
    for (int j = 0; j < n; ++j) {
      CHECK(p[j] >= 0.0);
      CHECK((x[j] - p[j]) - xp <= 1e-12);
    }
  }
  const std::vector<double> inside{0.2, 0.3, 0.5};
  CHECK(ProjectSimplexVector(inside) == inside);
  CHECK_THROWS_AS(ProjectSimplexVector(std::vector<double>{1.0, NAN}), Error);
}

TEST_CASE("halfspace projection lands on the boundary") {
  const std::vector<double> p{0.1, 0.1, 0.8};
  const Coalition c = Coalition::FromMask(3, 0b011);
  const std::vector<double> q = ProjectHalfspace(p, c, 0.1, 0.6);
  CHECK(c.Dot(q) + 0.1 == doctest::Approx(0.6));
  CHECK(q[2] == 0.8);
  CHECK(q[0] == doctest::Approx(0.25));
  CHECK(ProjectHalfspace(p, c, 0.1, 0.2) == p);
  CHECK_THROWS_AS(ProjectHalfspace(p, Coalition(3), 0.0, 1.0), Error);
}

TEST_CASE("subgradient batch is the negated mean-loss gradient") {
  Rng rng(2);
  const auto game = RandomTabular(5, rng);
  const std::vector<Coalition> batch = SampleCoalitions(5, 40, rng);
  std::vector<double> values;
  for (const Coalition& c : batch) values.push_back(game->Value(c));
  const std::vector<double> p = RandomSimplexPoint(5, rng);
  const std::vector<double> g = SubgradientBatch(p, 0.05, batch, values);
  auto mean_loss = [&](const std::vector<double>& q) {
    double total = 0.0;
    for (size_t k = 0; k < batch.size(); ++k) {
      total += CoalitionLoss(q, batch[k], 0.05, values[k]);
    }
    return total / batch.size();
  };
  for (int i = 0; i < 5; ++i) {
    std::vector<double> up = p, down = p;
    up[i] += 1e-6;
    down[i] -= 1e-6;
    const double fd = (mean_loss(up) - mean_loss(down)) / 2e-6;
    CHECK(-fd == doctest::Approx(g[i]).epsilon(1e-5));
  }
  CHECK_THROWS_AS(SubgradientBatch(p, 0.0, {}, std::span<const double>{}),
                  Error);
}

TEST_CASE("saddle map matches finite differences of the Lagrangian") {
  Rng rng(3);
  const auto game = RandomTabular(4, rng);
  const std::vector<Coalition> batch = AllCoalitions(4);
  std::vector<double> values;
  for (const Coalition& c : batch) values.push_back(game->Value(c));
  SaddleState s{RandomSimplexPoint(4, rng), 0.07, 3.0};
  const double gamma = 0.01;
  const SaddleMap f = EvaluateSaddleMap(s, batch, values, gamma);
  const double h = 1e-6;
  for (int i = 0; i < 4; ++i) {
    SaddleState up = s, down = s;
    up.payoffs[i] += h;
    down.payoffs[i] -= h;
    const double fd = (Lagrangian(up, batch, values, gamma) -
                       Lagrangian(down, batch, values, gamma)) / (2 * h);
    CHECK(f.grad_p[i] == doctest::Approx(fd).epsilon(1e-5));
  }
  SaddleState up = s, down = s;
  up.epsilon += h;
  down.epsilon -= h;
  CHECK(f.grad_epsilon ==
        doctest::Approx((Lagrangian(up, batch, values, gamma) -
                         Lagrangian(down, batch, values, gamma)) / (2 * h))
            .epsilon(1e-5));
  up = s;
  down = s;
  up.mu += h;
  down.mu -= h;
  CHECK(-f.grad_mu ==
        doctest::Approx((Lagrangian(up, batch, values, gamma) -
                         Lagrangian(down, batch, values, gamma)) / (2 * h))
            .epsilon(1e-5));

  const SaddleMap mean =
      EvaluateSaddleMap(s, batch, values, gamma, LossAggregation::kBatchMean);
  CHECK(mean.grad_p[0] * batch.size() == doctest::Approx(f.grad_p[0]));
}

TEST_CASE("full-batch saddle map is monotone") {
  Rng rng(4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int g = 0; g < 5; ++g) {
    const auto game = RandomTabular(6, rng);
    const std::vector<Coalition> batch = AllCoalitions(6);
    std::vector<double> values;
    for (const Coalition& c : batch) values.push_back(game->Value(c));
    for (int trial = 0; trial < 50; ++trial) {
      const SaddleState a{RandomSimplexPoint(6, rng), unit(rng), 100 * unit(rng)};
      const SaddleState b{RandomSimplexPoint(6, rng), unit(rng), 100 * unit(rng)};
      const SaddleMap fa = EvaluateSaddleMap(a, batch, values, 0.01);
      const SaddleMap fb = EvaluateSaddleMap(b, batch, values, 0.01);
      double inner = (fa.grad_epsilon - fb.grad_epsilon) * (a.epsilon - b.epsilon) +
                     (fa.grad_mu - fb.grad_mu) * (a.mu - b.mu);
      for (int i = 0; i < 6; ++i) {
        inner += (fa.grad_p[i] - fb.grad_p[i]) * (a.payoffs[i] - b.payoffs[i]);
      }
      CHECK(inner >= -1e-9);
    }
  }
}

TEST_CASE("softmax pullback is the chain rule through softmax") {
  const std::vector<double> logits{0.3, -1.2, 2.0, 0.0};
  const std::vector<double> g{1.0, -2.0, 0.5, 3.0};
  const std::vector<double> p = Softmax(logits);
  CHECK(std::accumulate(p.begin(), p.end(), 0.0) == doctest::Approx(1.0));
  const std::vector<double> pulled = SoftmaxPullback(p, g);
  for (int i = 0; i < 4; ++i) {
    std::vector<double> up = logits, down = logits;
    up[i] += 1e-6;
    down[i] -= 1e-6;
    const std::vector<double> pu = Softmax(up), pd = Softmax(down);
    double fd = 0.0;
    for (int j = 0; j < 4; ++j) fd += g[j] * (pu[j] - pd[j]) / 2e-6;
    CHECK(pulled[i] == doctest::Approx(fd).epsilon(1e-6));
  }
  const std::vector<double> big{1000.0, 0.0};
  CHECK(Softmax(big)[0] == 1.0);
}

TEST_CASE("tailored prox stays feasible") {
  SaddleState s{{0.5, 0.5}, 0.5, 10.0};
  SaddleMap f{{5.0, -5.0}, 100.0, -100.0};
  const SaddleState next = ProxTailored(s, f, 0.1, {0.0, 1.0, 12.0});
  CHECK(next.payoffs[0] + next.payoffs[1] == doctest::Approx(1.0));
  CHECK(next.payoffs[0] < next.payoffs[1]);
  CHECK(next.epsilon == 0.0);
  CHECK(next.mu == 12.0);
}

TEST_CASE("step schedules and presets") {
  const StepSchedule linear = StepSchedule::Linear(0.1, 0.01, 100);
  CHECK(linear.At(0) == doctest::Approx(0.1));
  CHECK(linear.At(50) == doctest::Approx(0.055));
  CHECK(linear.At(100) == doctest::Approx(0.01));
  CHECK(linear.At(1000) == doctest::Approx(0.01));
  CHECK(StepSchedule::Constant(0.2).At(77) == 0.2);
  CHECK_THROWS_AS(StepSchedule::Constant(-1.0).Validate(), Error);

  const SolverConfig timing = SolverConfig::TimingPreset();
  CHECK(timing.batch_size == 100);
  CHECK(timing.gamma == 0.001);
  CHECK(timing.prox == ProxKind::kTailored);
  const SolverConfig def = SolverConfig::DefaultPreset();
  CHECK(def.batch_size == 1000);
  CHECK(def.gamma == 0.01);
  CHECK(def.prox == ProxKind::kAdamSoftmax);

  SolverConfig bad = def;
  bad.batch_size = 0;
  CHECK_THROWS_AS(bad.Validate(), Error);
  bad = def;
  bad.gamma = 0.0;
  CHECK_THROWS_AS(bad.Validate(), Error);
}

SolverConfig SmallConfig() {
  SolverConfig config = SolverConfig::DefaultPreset();
  config.enumerate = true;
  config.iterations = 3000;
  config.schedule = StepSchedule::Linear(0.1, 0.001, config.iterations);
  config.seed = 5;
  return config;
}

TEST_CASE("mirror-prox finds the majority least core") {
  const auto game = Normalize(MakeMajorityGame(3));
  for (ProxKind prox : {ProxKind::kAdamSoftmax, ProxKind::kTailored}) {
    SolverConfig config = SmallConfig();
    config.prox = prox;
    const LeastCoreResult r = MirrorProxSolve(*game, config);
    CHECK(r.epsilon_final == doctest::Approx(1.0 / 3).epsilon(0.02));
    CHECK(r.epsilon_hat.epsilon_hat == doctest::Approx(1.0 / 3).epsilon(0.02));
    CHECK(r.iterations_run == config.iterations);
  }
}

TEST_CASE("mirror-prox tracks the exact LP on random games") {
  Rng rng(6);
  for (int trial = 0; trial < 3; ++trial) {
    const auto game = RandomTabular(6, rng);
    const double exact = LeastCoreExact(*game).epsilon;
    const LeastCoreResult r = MirrorProxSolve(*game, SmallConfig());
    CHECK(std::abs(r.epsilon_final - exact) <= 0.02);
    CHECK(r.epsilon_hat.epsilon_hat >= exact - 1e-9);
  }
}

TEST_CASE("solvers are deterministic in the seed") {
  Rng rng(7);
  const auto game = RandomTabular(7, rng);
  SolverConfig config = SolverConfig::DefaultPreset();
  config.iterations = 200;
  config.batch_size = 30;
  config.holdout_size = 50;
  config.seed = 99;
  const LeastCoreResult a = MirrorProxSolve(*game, config);
  const LeastCoreResult b = MirrorProxSolve(*game, config);
  CHECK(a.payoffs.vector() == b.payoffs.vector());
  CHECK(a.epsilon_final == b.epsilon_final);
  config.seed = 100;
  CHECK(MirrorProxSolve(*game, config).payoffs.vector() != a.payoffs.vector());
}

TEST_CASE("feasibility solvers reach the epsilon-core") {
  const auto game = Normalize(MakeMajorityGame(3));
  SolverConfig config = SmallConfig();
  config.schedule = StepSchedule::Constant(0.5);
  const LeastCoreResult cyclic = CyclicProjectionSolve(*game, 0.4, config);
  CHECK(cyclic.epsilon_hat.epsilon_hat <= 0.4 + 1e-6);
  const LeastCoreResult sgd = SgdSolve(*game, 0.4, config);
  CHECK(sgd.epsilon_hat.epsilon_hat <= 0.4 + 0.02);
}

TEST_CASE("bisection brackets the least-core value") {
  const auto game = Normalize(MakeMajorityGame(3));
  SolverConfig config = SmallConfig();
  config.iterations = 500;
  config.schedule = StepSchedule::Constant(0.5);
  const LeastCoreResult r =
      LcvViaBisection(*game, FeasibilitySolver::kCyclic, 1e-3, config);
  CHECK(r.epsilon_final == doctest::Approx(1.0 / 3).epsilon(0.02));

  SolverConfig tight = config;
  tight.max_oracle_calls = 10;
  CHECK_THROWS_AS(
      LcvViaBisection(*game, FeasibilitySolver::kSgd, 1e-3, tight), Error);
}

TEST_CASE("oracle budget and time limit stop the solver") {
  Rng rng(8);
  const auto game = RandomTabular(8, rng);
  SolverConfig config = SolverConfig::DefaultPreset();
  config.batch_size = 10;
  config.holdout_size = 20;
  config.max_oracle_calls = 1000;
  const LeastCoreResult r = MirrorProxSolve(*game, config);
  CHECK(r.iterations_run < config.iterations);
  CHECK(r.oracle_calls <= 1000 + static_cast<uint64_t>(config.holdout_size));

  config.max_oracle_calls = 0;
  config.iterations = int64_t{1} << 40;
  config.time_limit_seconds = 0.05;
  const LeastCoreResult timed = MirrorProxSolve(*game, config);
  CHECK(timed.iterations_run < config.iterations);
  CHECK(timed.wall_seconds < 2.0);
}

TEST_CASE("core certificate") {
  const auto game = Normalize(MakeUnanimityGame(5));
  const std::vector<double> uniform(5, 0.2);
  const CoreCertificate cert = CheckCoreCertificate(*game, uniform, 0.0, 0.01);
  CHECK(cert.losses_within_gamma);
  CHECK(cert.relaxed_violations == 0);
  CHECK(cert.relaxed_epsilon == doctest::Approx(std::sqrt(10.0) * 0.01));

  const auto majority = Normalize(MakeMajorityGame(3));
  const std::vector<double> skew{1.0, 0.0, 0.0};
  const CoreCertificate bad = CheckCoreCertificate(*majority, skew, 0.0, 0.01);
  CHECK_FALSE(bad.losses_within_gamma);
  CHECK(bad.relaxed_violations == 1);
  CHECK(bad.max_excess == doctest::Approx(1.0));
}

}  // namespace
}  // namespace leastcore
