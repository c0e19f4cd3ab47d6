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


#include <cmath>
#include <vector>

#include "doctest.h"
#include "leastcore/elo.h"

namespace leastcore {
namespace {

std::vector<MatchRecord> Repeat(MatchRecord m, int count) {
  return std::vector<MatchRecord>(count, m);
}

TEST_CASE("elo probability") {
  CHECK(EloProb(0.0, 0.0) == 0.5);
  CHECK(EloProb(400.0 * std::log(3.0), 0.0) == doctest::Approx(0.75));
  CHECK(EloProb(100.0, 0.0) + EloProb(0.0, 100.0) == doctest::Approx(1.0));
}

TEST_CASE("two models with a 3:1 record") {
  std::vector<MatchRecord> matches = Repeat({0, 1, true}, 3);
  matches.push_back({0, 1, false});
  const RatingVector fit = MmFit(matches, 2);
  CHECK_FALSE(fit.smoothed);
  CHECK(fit.ratings[0] - fit.ratings[1] ==
        doctest::Approx(400.0 * std::log(3.0)).epsilon(1e-9));
  CHECK(std::exp((fit.ratings[0] - fit.ratings[1]) / 400.0) ==
        doctest::Approx(3.0).epsilon(1e-6));
  CHECK(fit.ratings[0] + fit.ratings[1] == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("undefeated models are smoothed") {
  const RatingVector fit = MmFit(Repeat({0, 1, true}, 4), 2);
  CHECK(fit.smoothed);
  // 4.5 : 0.5 after the pseudo-win split.
  CHECK(fit.ratings[0] - fit.ratings[1] ==
        doctest::Approx(400.0 * std::log(9.0)).epsilon(1e-9));
}

TEST_CASE("disconnected comparison graphs are flagged") {
  std::vector<MatchRecord> matches{{0, 1, true}, {1, 0, true},
                                   {2, 3, true}, {3, 2, false}};
  const RatingVector fit = MmFit(matches, 4);
  CHECK(fit.disconnected);
  CHECK(fit.ratings[0] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(fit.ratings[2] > fit.ratings[3]);
  const RatingVector unseen = MmFit(std::vector<MatchRecord>{}, 3);
  for (double r : unseen.ratings) CHECK(r == 0.0);
}

TEST_CASE("log-likelihood never decreases across sweeps") {
  Rng rng(1);
  const std::vector<double> truth{-200, -50, 0, 80, 300};
  const std::vector<MatchRecord> matches = GenerateMatches(truth, 400, rng);
  std::vector<double> trace;
  MmOptions options;
  options.log_likelihood_trace = &trace;
  const RatingVector fit = MmFit(matches, 5, options);
  REQUIRE(trace.size() >= 2);
  for (size_t k = 1; k < trace.size(); ++k) {
    CHECK(trace[k] >= trace[k - 1] - 1e-9);
  }
  CHECK(LogLikelihood(fit.ratings, matches) ==
        doctest::Approx(trace.back()).epsilon(1e-9));
}

TEST_CASE("ratings recover the generating order") {
  Rng rng(2);
  std::vector<double> truth(10);
  for (int i = 0; i < 10; ++i) truth[i] = 60.0 * i;
  const RatingVector fit = MmFit(GenerateMatches(truth, 5000, rng), 10);
  CHECK(SpearmanCorrelation(truth, fit.ratings) >= 0.95);
}

TEST_CASE("cross entropy and rank correlation") {
  const std::vector<double> ratings{0.0, 0.0};
  const std::vector<MatchRecord> matches{{0, 1, true}, {0, 1, false}};
  CHECK(CrossEntropy(ratings, matches) == doctest::Approx(std::log(2.0)));
  CHECK_THROWS_AS(CrossEntropy(ratings, std::vector<MatchRecord>{}), Error);

  CHECK(SpearmanCorrelation(std::vector<double>{1, 2, 3},
                            std::vector<double>{10, 20, 30}) ==
        doctest::Approx(1.0));
  CHECK(SpearmanCorrelation(std::vector<double>{1, 2, 3},
                            std::vector<double>{3, 2, 1}) ==
        doctest::Approx(-1.0));
  CHECK(SpearmanCorrelation(std::vector<double>{1, 1, 2, 3},
                            std::vector<double>{1, 1, 2, 3}) ==
        doctest::Approx(1.0));
}

TEST_CASE("match validation") {
  CHECK_THROWS_AS(ValidateMatches(std::vector<MatchRecord>{{1, 1, true}}, 2),
                  Error);
  CHECK_THROWS_AS(ValidateMatches(std::vector<MatchRecord>{{0, 2, true}}, 2),
                  Error);
}

TEST_CASE("match CSV round-trip") {
  const MatchTable table = ParseMatchCsv(
      "model_a,model_b,winner\ngpt,llama,a\nllama,mistral,b\ngpt,mistral,a\n");
  CHECK(table.model_names == std::vector<std::string>{"gpt", "llama", "mistral"});
  REQUIRE(table.matches.size() == 3);
  CHECK(table.matches[1] == MatchRecord{1, 2, false});
  const MatchTable back = ParseMatchCsv(FormatMatchCsv(table));
  CHECK(back.model_names == table.model_names);
  CHECK(back.matches == table.matches);
  CHECK_THROWS_AS(ParseMatchCsv("model_a,model_b,winner\nx,y,c\n"), Error);
  CHECK_THROWS_AS(ParseMatchCsv("a,b\nx,y\n"), Error);
}

TEST_CASE("arena valuation game") {
  Rng rng(3);
  const std::vector<double> truth{0, 150, 300};
  const auto train = GenerateMatches(truth, 60, rng);
  const auto test = GenerateMatches(truth, 500, rng);
  const ArenaValuationGame game(train, test, 3);
  CHECK(game.Value(Coalition(60)) == 0.0);
  CHECK(game.baseline_cross_entropy() == doctest::Approx(std::log(2.0)));
  const double grand = game.Value(Coalition::Grand(60));
  const RatingVector fit = MmFit(train, 3);
  CHECK(grand == doctest::Approx(std::log(2.0) - CrossEntropy(fit.ratings, test)));
  CHECK(grand > 0.0);
}

}  // namespace
}  // namespace leastcore
