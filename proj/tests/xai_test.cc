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
#include "leastcore/xai.h"

namespace leastcore {
namespace {

Dataset LinearData(int rows, Rng& rng, double noise = 0.0) {
  const std::vector<double> beta{2.0, -1.0, 0.0};
  return SyntheticRegression(rows, beta, noise, rng);
}

std::vector<int> Iota(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

TEST_CASE("CSV parsing") {
  const Dataset d = ParseCsv("a,y,b\n1,2,3\n4,5,6\n", "y", TaskKind::kRegression);
  CHECK(d.rows() == 2);
  CHECK(d.cols() == 2);
  CHECK(d.feature_names == std::vector<std::string>{"a", "b"});
  CHECK(d.features(1, 1) == 6.0);
  CHECK(d.target(0) == 2.0);
  const Dataset back = ParseCsv(FormatCsv(d), "y", TaskKind::kRegression);
  CHECK(back.features == d.features);
  CHECK(back.target == d.target);

  CHECK_THROWS_AS(ParseCsv("a,b\n1,2\n", "y", TaskKind::kRegression), Error);
  CHECK_THROWS_AS(ParseCsv("a,y\n1,x\n", "y", TaskKind::kRegression), Error);
  CHECK_THROWS_AS(ParseCsv("a,y\n1\n", "y", TaskKind::kRegression), Error);
  CHECK_THROWS_AS(ParseCsv("a,y\n1,2\n", "y", TaskKind::kClassification),
                  Error);
}

TEST_CASE("non-numeric cells report their location") {
  try {
    ParseCsv("a,y\n1,2\n3,oops\n", "y", TaskKind::kRegression);
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNonNumericCell);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("train/test split") {
  Rng rng(1);
  const Dataset d = LinearData(10, rng);
  const TrainTestSplit s = SplitTrainTest(d, 0.8, 4);
  CHECK(s.train.rows() == 8);
  CHECK(s.test.rows() == 2);
  CHECK_FALSE(s.empty_test);
  CHECK(SplitTrainTest(d, 1.0, 4).empty_test);
  CHECK(SplitTrainTest(d, 0.8, 4).train.features == s.train.features);
}

TEST_CASE("least squares recovers a noiseless model") {
  Rng rng(2);
  const Dataset d = LinearData(50, rng);
  const LinearModel m = LinearModel::Fit(d.features, d.target, Iota(3));
  CHECK(m.raw_coefficients()[0] == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(m.raw_coefficients()[1] == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(std::abs(m.raw_coefficients()[2]) < 1e-6);
  CHECK(Score(m, d) == doctest::Approx(1.0).epsilon(1e-9));

  Eigen::MatrixXd x = d.features;
  x.col(2).setConstant(4.0);
  const LinearModel dropped = LinearModel::Fit(x, d.target, Iota(3));
  CHECK(dropped.dropped_columns() == 1);
}

TEST_CASE("logistic regression separates a clean split") {
  Rng rng(3);
  std::normal_distribution<double> normal(0.0, 1.0);
  Dataset d;
  d.task = TaskKind::kClassification;
  d.features.resize(200, 2);
  d.target.resize(200);
  for (int i = 0; i < 200; ++i) {
    d.features(i, 0) = normal(rng);
    d.features(i, 1) = normal(rng);
    d.target(i) = d.features(i, 0) + 0.5 * d.features(i, 1) > 0 ? 1.0 : 0.0;
  }
  const LogisticModel m = LogisticModel::Fit(d.features, d.target, Iota(2));
  CHECK(Score(m, d) >= 0.95);
}

TEST_CASE("empty-coalition scores") {
  Rng rng(4);
  const Dataset train = LinearData(20, rng);
  const Dataset test = LinearData(20, rng);
  CHECK(EmptyScore(train, test) == 0.0);
  CHECK(FitScoreRows(train, test, std::vector<int>{3}) == 0.0);
  CHECK(FitScore(train, test, Coalition::Grand(3)) > 0.9);
}

TEST_CASE("global feature game") {
  Rng rng(5);
  const Dataset train = LinearData(60, rng, 0.1);
  const Dataset test = LinearData(60, rng, 0.1);
  const GlobalFeatureGame game(train, test);
  CHECK(game.Value(Coalition(3)) == 0.0);
  const double x0 = game.Value(Coalition::FromMask(3, 0b001));
  const double x2 = game.Value(Coalition::FromMask(3, 0b100));
  CHECK(x0 > x2);
  CHECK(game.Value(Coalition::Grand(3)) > x0);
}

TEST_CASE("local feature game hybrids and determinism") {
  Rng rng(6);
  const Dataset data = LinearData(40, rng);
  auto model = std::make_shared<LinearModel>(
      LinearModel::Fit(data.features, data.target, Iota(3)));
  LocalFeatureGame::Options options;
  options.draws = 3;
  options.seed = 9;
  const LocalFeatureGame game(model, data, 0, options);
  CHECK(game.Value(Coalition(3)) == doctest::Approx(0.0));
  const Coalition c = Coalition::FromMask(3, 0b001);
  CHECK(game.Value(c) == game.Value(c));
  const std::vector<double> hybrid = game.Hybrid(c, 5);
  CHECK(hybrid[0] == data.features(0, 0));
  CHECK(hybrid[1] == data.features(5, 1));

  options.policy = BaselinePolicy::kBottomDecilePool;
  const LocalFeatureGame decile(model, data, 0, options);
  CHECK(decile.baseline_pool().size() == 4);
  CHECK(ParseBaselinePolicy(BaselinePolicyName(BaselinePolicy::kFixedInstance)) ==
        BaselinePolicy::kFixedInstance);
}

TEST_CASE("data valuation game") {
  Rng rng(7);
  const Dataset train = LinearData(30, rng, 0.1);
  const Dataset test = LinearData(30, rng, 0.1);
  const DataValuationGame game(train, test);
  CHECK(game.Value(Coalition(30)) == 0.0);
  CHECK(game.Value(Coalition::Grand(30)) > 0.9);
}

TEST_CASE("removal curve") {
  Rng rng(8);
  const Dataset train = LinearData(40, rng, 0.1);
  const Dataset test = LinearData(40, rng, 0.1);
  std::vector<double> importance(40);
  std::iota(importance.begin(), importance.end(), 0.0);
  const auto curve = RemovalCurve(train, test, importance);
  REQUIRE(curve.size() == 11);
  CHECK(curve[0].fraction == 0.0);
  CHECK(curve[10].fraction == doctest::Approx(0.5));
  CHECK(curve[0].score == doctest::Approx(FitScoreRows(train, test, Iota(40))));
  CHECK_THROWS_AS(RemovalCurve(train, test, std::vector<double>(3, 0.0)), Error);
}

TEST_CASE("planted noise data") {
  Rng rng(9);
  const PlantedNoiseData d = GeneratePlantedNoise(100, 50, 4, 0.1, 5.0, rng);
  CHECK(d.train.rows() == 100);
  CHECK(d.test.rows() == 50);
  CHECK(std::count(d.corrupted.begin(), d.corrupted.end(), true) == 10);
}

TEST_CASE("attribution methods") {
  Rng rng(10);
  const PlantedNoiseData d = GeneratePlantedNoise(24, 40, 3, 0.1, 1.0, rng);
  auto game = std::make_shared<DataValuationGame>(d.train, d.test);
  const AttributionResult shapley = ShapleyAttribution(*game, 24 * 40, 1);
  CHECK(shapley.importances.size() == 24);
  CHECK(shapley.budget_spent == 24 * 40);

  SolverConfig base = SolverConfig::DefaultPreset();
  base.batch_size = 20;
  const AttributionResult lc = LeastCoreAttribution(game, 4000, 1, base);
  CHECK(lc.importances.size() == 24);
  CHECK(lc.budget_spent <= 4000);
  REQUIRE(lc.epsilon_hat.has_value());
  CHECK(std::accumulate(lc.importances.begin(), lc.importances.end(), 0.0) ==
        doctest::Approx(1.0));

  const AttributionResult r1 = RandomAttribution(24, 5);
  CHECK(r1.importances == RandomAttribution(24, 5).importances);
  CHECK(r1.importances != RandomAttribution(24, 6).importances);
}

}  // namespace
}  // namespace leastcore
