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


// Characteristic functions built from model quality: global feature
// attribution, local (per-instance) attribution and data valuation, plus
// the small in-repo linear and logistic models they train.

#ifndef LEASTCORE_XAI_H_
#define LEASTCORE_XAI_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "leastcore/game_core.h"
#include "leastcore/iterative.h"

namespace leastcore {

enum class TaskKind { kRegression, kClassification };

std::string TaskKindName(TaskKind task);
TaskKind ParseTaskKind(const std::string& text);

struct Dataset {
  Eigen::MatrixXd features;  // rows are instances
  Eigen::VectorXd target;    // {0, 1} for classification
  std::vector<std::string> feature_names;
  std::string target_name = "target";
  TaskKind task = TaskKind::kRegression;

  int rows() const { return static_cast<int>(features.rows()); }
  int cols() const { return static_cast<int>(features.cols()); }
  Dataset SelectRows(std::span<const int> rows) const;
  // Throws kInvalidArgument on shape or label problems.
  void Validate() const;
};

// Header row, comma-separated reals, no quoting. Throws kParseError,
// kMissingTargetColumn and kNonNumericCell (with line and column).
Dataset ParseCsv(const std::string& text, const std::string& target,
                 TaskKind task);
Dataset LoadCsv(const std::string& path, const std::string& target,
                TaskKind task);
std::string FormatCsv(const Dataset& data);

struct TrainTestSplit {
  Dataset train;
  Dataset test;
  bool empty_test = false;
};

// Seeded shuffle, then the first round(fraction * rows) rows train.
TrainTestSplit SplitTrainTest(const Dataset& data, double fraction,
                              uint64_t seed);

class Model {
 public:
  virtual ~Model() = default;
  // Regression output, or the positive-class probability.
  virtual double Predict(std::span<const double> row) const = 0;
};

// Ordinary least squares on standardized columns with a 1e-8 ridge.
class LinearModel : public Model {
 public:
  static LinearModel Fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                         std::span<const int> columns,
                         std::span<const int> rows = {});
  double Predict(std::span<const double> row) const override;

  std::span<const int> columns() const { return columns_; }
  // Coefficients per selected column in raw feature units.
  std::span<const double> raw_coefficients() const { return raw_coef_; }
  double raw_intercept() const { return raw_intercept_; }
  int dropped_columns() const { return dropped_; }

 private:
  std::vector<int> columns_;
  std::vector<double> raw_coef_;
  double raw_intercept_ = 0.0;
  int dropped_ = 0;
};

// Logistic regression on standardized columns: full-batch gradient
// descent, step 0.1, L2 weight 1e-4, 1000 iterations.
class LogisticModel : public Model {
 public:
  struct Options {
    double step = 0.1;
    double l2 = 1e-4;
    int iterations = 1000;
  };
  static LogisticModel Fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                           std::span<const int> columns,
                           std::span<const int> rows = {});
  static LogisticModel Fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                           std::span<const int> columns,
                           std::span<const int> rows, const Options& options);
  double Predict(std::span<const double> row) const override;

  int dropped_columns() const { return dropped_; }

 private:
  std::vector<int> columns_;
  std::vector<double> raw_coef_;
  double raw_intercept_ = 0.0;
  int dropped_ = 0;
};

// R^2 against the test mean (regression) or accuracy at 0.5.
double Score(const Model& model, const Dataset& test);
// Score of the model that sees nothing: 0 for regression (the mean
// predictor), majority-class accuracy for classification.
double EmptyScore(const Dataset& train, const Dataset& test);

// Trains on the given feature columns (all rows) and scores on test.
double FitScore(const Dataset& train, const Dataset& test,
                const Coalition& features);
// Trains on the given rows (all features) and scores on test. Below the
// fit floor (2 rows, or one row per class) returns EmptyScore.
double FitScoreRows(const Dataset& train, const Dataset& test,
                    std::span<const int> rows);

// Players are features: v(C) = FitScore(C) - FitScore(empty).
class GlobalFeatureGame : public CharacteristicOracle {
 public:
  GlobalFeatureGame(Dataset train, Dataset test, bool shift = true);

 protected:
  double Evaluate(const Coalition& coalition) const override;

 private:
  Dataset train_;
  Dataset test_;
  double offset_;
};

enum class BaselinePolicy {
  kUniformRandomInstance,
  kBottomDecilePool,
  kFixedInstance,
};

std::string BaselinePolicyName(BaselinePolicy policy);
BaselinePolicy ParseBaselinePolicy(const std::string& text);

// v(C) = mean_b [f(hybrid(x, b, C)) - f(b)], where the hybrid takes the
// features in C from the instance x and the rest from a baseline b. The
// baselines for a coalition are seeded by its bitmask, so repeated queries
// agree.
class LocalFeatureGame : public CharacteristicOracle {
 public:
  struct Options {
    BaselinePolicy policy = BaselinePolicy::kUniformRandomInstance;
    int draws = 1;
    int fixed_instance = 0;
    uint64_t seed = 0;
  };

  LocalFeatureGame(std::shared_ptr<const Model> model, Dataset data,
                   int instance, Options options);

  std::span<const int> baseline_pool() const { return pool_; }
  std::vector<double> Hybrid(const Coalition& coalition, int baseline) const;

 protected:
  double Evaluate(const Coalition& coalition) const override;

 private:
  std::shared_ptr<const Model> model_;
  Dataset data_;
  int instance_;
  Options options_;
  std::vector<int> pool_;
};

// Players are training rows: v(C) = FitScoreRows(C) - EmptyScore.
class DataValuationGame : public CharacteristicOracle {
 public:
  DataValuationGame(Dataset train, Dataset test);

  const Dataset& train() const { return train_; }
  const Dataset& test() const { return test_; }

 protected:
  double Evaluate(const Coalition& coalition) const override;

 private:
  Dataset train_;
  Dataset test_;
  double empty_score_;
};

struct RemovalPoint {
  double fraction = 0.0;
  double score = 0.0;
};

// Removes rows in blocks of `step` (descending importance, ties by index),
// refitting on the remainder each time; includes fraction 0.
std::vector<RemovalPoint> RemovalCurve(const Dataset& train,
                                       const Dataset& test,
                                       std::span<const double> importances,
                                       double step = 0.05,
                                       double max_fraction = 0.5);

enum class AttributionMethod { kShapleyMc, kLeastCore, kRandom };

std::string AttributionMethodName(AttributionMethod method);

struct AttributionResult {
  std::vector<double> importances;
  AttributionMethod method = AttributionMethod::kShapleyMc;
  uint64_t budget_spent = 0;
  std::optional<double> epsilon_hat;  // least core only
};

// Monte-Carlo Shapley with the whole budget.
AttributionResult ShapleyAttribution(const CharacteristicOracle& game,
                                     uint64_t budget, uint64_t seed);

// Softmax + Adam least core with 90% of the budget for training batches
// and 10% for the held-out epsilon-hat sample. `base` supplies batch size,
// gamma and the step schedule; iterations follow from the budget.
AttributionResult LeastCoreAttribution(OraclePtr game, uint64_t budget,
                                       uint64_t seed,
                                       const SolverConfig& base);

// Seeded uniform [0, 1) scores, for the random-order removal baseline.
AttributionResult RandomAttribution(int players, uint64_t seed);

// y = x beta + N(0, noise^2) with x ~ N(0, 1).
Dataset SyntheticRegression(int rows, std::span<const double> beta,
                            double noise, Rng& rng);

struct PlantedNoiseData {
  Dataset train;
  Dataset test;
  std::vector<bool> corrupted;  // per training row
};

// Linear regression data whose first round(fraction * train_rows) shuffled
// training targets are replaced by N(0, corruption_scale^2) noise.
PlantedNoiseData GeneratePlantedNoise(int train_rows, int test_rows,
                                      int features, double fraction,
                                      double corruption_scale, Rng& rng);

}  // namespace leastcore

#endif  // LEASTCORE_XAI_H_
