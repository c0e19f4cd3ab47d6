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


#include "leastcore/xai.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "leastcore/shapley_mc.h"
#include "leastcore/text.h"

namespace leastcore {
namespace {

constexpr double kRidge = 1e-8;
constexpr double kConstantColumn = 1e-12;

std::vector<int> AllIndices(int count) {
  std::vector<int> out(count);
  std::iota(out.begin(), out.end(), 0);
  return out;
}

// Standardized design over the chosen rows and the non-constant columns.
struct Design {
  Eigen::MatrixXd z;
  Eigen::VectorXd y;
  std::vector<int> columns;
  std::vector<double> mean;
  std::vector<double> scale;
  int dropped = 0;
};

Design BuildDesign(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                   std::span<const int> columns, std::span<const int> rows) {
  std::vector<int> row_ids(rows.begin(), rows.end());
  if (row_ids.empty()) row_ids = AllIndices(static_cast<int>(x.rows()));
  const int m = static_cast<int>(row_ids.size());
  Design d;
  d.y.resize(m);
  for (int r = 0; r < m; ++r) d.y[r] = y[row_ids[r]];
  for (int c : columns) {
    if (c < 0 || c >= x.cols()) {
      throw Error(ErrorCode::kDimensionMismatch, "feature column out of range");
    }
    double mean = 0.0;
    for (int r : row_ids) mean += x(r, c);
    mean /= m;
    double var = 0.0;
    for (int r : row_ids) var += (x(r, c) - mean) * (x(r, c) - mean);
    const double sd = std::sqrt(var / m);
    if (sd < kConstantColumn) {
      ++d.dropped;
      continue;
    }
    d.columns.push_back(c);
    d.mean.push_back(mean);
    d.scale.push_back(sd);
  }
  d.z.resize(m, static_cast<Eigen::Index>(d.columns.size()));
  for (size_t k = 0; k < d.columns.size(); ++k) {
    for (int r = 0; r < m; ++r) {
      d.z(r, k) = (x(row_ids[r], d.columns[k]) - d.mean[k]) / d.scale[k];
    }
  }
  return d;
}

double Sigmoid(double t) {
  return t >= 0.0 ? 1.0 / (1.0 + std::exp(-t))
                  : std::exp(t) / (1.0 + std::exp(t));
}

double AffinePredict(std::span<const int> columns,
                     std::span<const double> coef, double intercept,
                     std::span<const double> row) {
  double out = intercept;
  for (size_t k = 0; k < columns.size(); ++k) out += coef[k] * row[columns[k]];
  return out;
}

std::vector<double> RowOf(const Dataset& data, int r) {
  std::vector<double> row(data.cols());
  for (int c = 0; c < data.cols(); ++c) row[c] = data.features(r, c);
  return row;
}

uint64_t CoalitionSeed(uint64_t seed, const Coalition& coalition) {
  uint64_t h = DeriveSeed(seed, coalition.num_players());
  for (uint64_t w : coalition.words()) h = DeriveSeed(h ^ w, 0x9e37);
  return h;
}

bool HasBothClasses(const Dataset& train, std::span<const int> rows) {
  bool zero = false;
  bool one = false;
  for (int r : rows) (train.target[r] > 0.5 ? one : zero) = true;
  return zero && one;
}

}  // namespace

std::string TaskKindName(TaskKind task) {
  return task == TaskKind::kRegression ? "regression" : "classification";
}

TaskKind ParseTaskKind(const std::string& text) {
  if (text == "regression") return TaskKind::kRegression;
  if (text == "classification") return TaskKind::kClassification;
  throw Error(ErrorCode::kInvalidArgument, "unknown task '" + text + "'");
}

Dataset Dataset::SelectRows(std::span<const int> rows) const {
  Dataset out;
  out.features.resize(static_cast<Eigen::Index>(rows.size()), features.cols());
  out.target.resize(static_cast<Eigen::Index>(rows.size()));
  for (size_t k = 0; k < rows.size(); ++k) {
    out.features.row(k) = features.row(rows[k]);
    out.target[k] = target[rows[k]];
  }
  out.feature_names = feature_names;
  out.target_name = target_name;
  out.task = task;
  return out;
}

void Dataset::Validate() const {
  if (features.rows() != target.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "one target per row");
  }
  if (static_cast<int>(feature_names.size()) != cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "one name per feature");
  }
  if (cols() < 1) throw Error(ErrorCode::kInvalidArgument, "no feature columns");
  if (!features.allFinite() || !target.allFinite()) {
    throw Error(ErrorCode::kNonFiniteInput, "dataset holds non-finite values");
  }
  if (task == TaskKind::kClassification) {
    for (Eigen::Index r = 0; r < target.size(); ++r) {
      if (target[r] != 0.0 && target[r] != 1.0) {
        throw Error(ErrorCode::kInvalidArgument,
                    "classification targets must be 0 or 1");
      }
    }
  }
}

Dataset ParseCsv(const std::string& text, const std::string& target,
                 TaskKind task) {
  std::vector<std::string> lines = SplitString(text, '\n');
  std::vector<std::string> header;
  size_t k = 0;
  for (; k < lines.size(); ++k) {
    if (!Trim(lines[k]).empty()) {
      header = SplitString(Trim(lines[k]), ',');
      break;
    }
  }
  if (header.empty()) throw Error(ErrorCode::kParseError, "empty CSV");
  int target_col = -1;
  Dataset data;
  data.task = task;
  data.target_name = target;
  for (size_t c = 0; c < header.size(); ++c) {
    const std::string name = Trim(header[c]);
    if (name == target && target_col < 0) {
      target_col = static_cast<int>(c);
    } else {
      data.feature_names.push_back(name);
    }
  }
  if (target_col < 0) {
    throw Error(ErrorCode::kMissingTargetColumn,
                "no column named '" + target + "'");
  }
  std::vector<std::vector<double>> rows;
  std::vector<double> targets;
  for (++k; k < lines.size(); ++k) {
    const std::string line = Trim(lines[k]);
    if (line.empty()) continue;
    const std::vector<std::string> cells = SplitString(line, ',');
    if (cells.size() != header.size()) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(k + 1) + ": expected " +
                      std::to_string(header.size()) + " cells, got " +
                      std::to_string(cells.size()));
    }
    std::vector<double> row;
    for (size_t c = 0; c < cells.size(); ++c) {
      double value;
      try {
        value = ParseDouble(Trim(cells[c]));
      } catch (const Error&) {
        throw Error(ErrorCode::kNonNumericCell,
                    "line " + std::to_string(k + 1) + ", column " +
                        std::to_string(c + 1) + ": '" + Trim(cells[c]) + "'");
      }
      if (static_cast<int>(c) == target_col) {
        targets.push_back(value);
      } else {
        row.push_back(value);
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.size() < 2) {
    throw Error(ErrorCode::kParseError, "need at least 2 data rows");
  }
  const int cols = static_cast<int>(data.feature_names.size());
  data.features.resize(static_cast<Eigen::Index>(rows.size()), cols);
  data.target.resize(static_cast<Eigen::Index>(rows.size()));
  for (size_t r = 0; r < rows.size(); ++r) {
    for (int c = 0; c < cols; ++c) data.features(r, c) = rows[r][c];
    data.target[r] = targets[r];
  }
  data.Validate();
  return data;
}

Dataset LoadCsv(const std::string& path, const std::string& target,
                TaskKind task) {
  return ParseCsv(ReadTextFile(path), target, task);
}

std::string FormatCsv(const Dataset& data) {
  std::string out;
  for (const std::string& name : data.feature_names) out += name + ",";
  out += data.target_name + "\n";
  for (int r = 0; r < data.rows(); ++r) {
    for (int c = 0; c < data.cols(); ++c) {
      out += FormatExact(data.features(r, c)) + ",";
    }
    out += FormatExact(data.target[r]) + "\n";
  }
  return out;
}

TrainTestSplit SplitTrainTest(const Dataset& data, double fraction,
                              uint64_t seed) {
  if (data.rows() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "split needs at least 2 rows");
  }
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "train fraction must be in (0, 1]");
  }
  std::vector<int> order = AllIndices(data.rows());
  Rng rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  const int cut = static_cast<int>(std::lround(fraction * data.rows()));
  TrainTestSplit split;
  split.train = data.SelectRows(std::span<const int>(order.data(), cut));
  split.test = data.SelectRows(
      std::span<const int>(order.data() + cut, order.size() - cut));
  split.empty_test = cut == data.rows();
  return split;
}

LinearModel LinearModel::Fit(const Eigen::MatrixXd& x,
                             const Eigen::VectorXd& y,
                             std::span<const int> columns,
                             std::span<const int> rows) {
  const Design d = BuildDesign(x, y, columns, rows);
  LinearModel model;
  model.columns_ = d.columns;
  model.dropped_ = d.dropped;
  const double y_mean = d.y.mean();
  model.raw_intercept_ = y_mean;
  if (d.columns.empty()) return model;
  const Eigen::Index k = d.z.cols();
  Eigen::MatrixXd gram = d.z.transpose() * d.z;
  gram.diagonal().array() += kRidge;
  const Eigen::VectorXd rhs =
      d.z.transpose() * (d.y.array() - y_mean).matrix();
  const Eigen::VectorXd w = gram.ldlt().solve(rhs);
  model.raw_coef_.resize(k);
  for (Eigen::Index c = 0; c < k; ++c) {
    model.raw_coef_[c] = w[c] / d.scale[c];
    model.raw_intercept_ -= model.raw_coef_[c] * d.mean[c];
  }
  return model;
}

double LinearModel::Predict(std::span<const double> row) const {
  return AffinePredict(columns_, raw_coef_, raw_intercept_, row);
}

LogisticModel LogisticModel::Fit(const Eigen::MatrixXd& x,
                                 const Eigen::VectorXd& y,
                                 std::span<const int> columns,
                                 std::span<const int> rows) {
  return Fit(x, y, columns, rows, Options{});
}

LogisticModel LogisticModel::Fit(const Eigen::MatrixXd& x,
                                 const Eigen::VectorXd& y,
                                 std::span<const int> columns,
                                 std::span<const int> rows,
                                 const Options& options) {
  const Design d = BuildDesign(x, y, columns, rows);
  LogisticModel model;
  model.columns_ = d.columns;
  model.dropped_ = d.dropped;
  const Eigen::Index m = d.z.rows();
  const Eigen::Index k = d.z.cols();
  Eigen::VectorXd w = Eigen::VectorXd::Zero(k);
  double b = 0.0;
  Eigen::VectorXd residual(m);
  for (int it = 0; it < options.iterations; ++it) {
    const Eigen::VectorXd logits = (d.z * w).array() + b;
    for (Eigen::Index r = 0; r < m; ++r) {
      residual[r] = Sigmoid(logits[r]) - d.y[r];
    }
    const Eigen::VectorXd grad =
        d.z.transpose() * residual / static_cast<double>(m) + options.l2 * w;
    w -= options.step * grad;
    b -= options.step * residual.mean();
  }
  model.raw_coef_.resize(k);
  model.raw_intercept_ = b;
  for (Eigen::Index c = 0; c < k; ++c) {
    model.raw_coef_[c] = w[c] / d.scale[c];
    model.raw_intercept_ -= model.raw_coef_[c] * d.mean[c];
  }
  return model;
}

double LogisticModel::Predict(std::span<const double> row) const {
  return Sigmoid(AffinePredict(columns_, raw_coef_, raw_intercept_, row));
}

double Score(const Model& model, const Dataset& test) {
  if (test.rows() == 0) {
    throw Error(ErrorCode::kEmptySample, "scoring needs test rows");
  }
  std::vector<double> row(test.cols());
  if (test.task == TaskKind::kClassification) {
    int correct = 0;
    for (int r = 0; r < test.rows(); ++r) {
      for (int c = 0; c < test.cols(); ++c) row[c] = test.features(r, c);
      const double label = model.Predict(row) >= 0.5 ? 1.0 : 0.0;
      correct += label == test.target[r];
    }
    return static_cast<double>(correct) / test.rows();
  }
  const double mean = test.target.mean();
  double sse = 0.0;
  double sst = 0.0;
  for (int r = 0; r < test.rows(); ++r) {
    for (int c = 0; c < test.cols(); ++c) row[c] = test.features(r, c);
    const double e = test.target[r] - model.Predict(row);
    sse += e * e;
    sst += (test.target[r] - mean) * (test.target[r] - mean);
  }
  if (sst == 0.0) return sse == 0.0 ? 1.0 : 0.0;
  return 1.0 - sse / sst;
}

double EmptyScore(const Dataset& train, const Dataset& test) {
  if (test.rows() == 0) {
    throw Error(ErrorCode::kEmptySample, "scoring needs test rows");
  }
  if (train.task == TaskKind::kRegression) return 0.0;
  const double ones = train.target.sum();
  const double majority = ones > train.rows() - ones ? 1.0 : 0.0;
  int correct = 0;
  for (int r = 0; r < test.rows(); ++r) correct += test.target[r] == majority;
  return static_cast<double>(correct) / test.rows();
}

double FitScore(const Dataset& train, const Dataset& test,
                const Coalition& features) {
  if (features.num_players() != train.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "feature subset size");
  }
  if (features.empty()) return EmptyScore(train, test);
  const std::vector<int> columns = features.Members();
  if (train.task == TaskKind::kRegression) {
    return Score(LinearModel::Fit(train.features, train.target, columns), test);
  }
  return Score(LogisticModel::Fit(train.features, train.target, columns), test);
}

double FitScoreRows(const Dataset& train, const Dataset& test,
                    std::span<const int> rows) {
  const std::vector<int> columns = AllIndices(train.cols());
  if (train.task == TaskKind::kRegression) {
    if (rows.size() < 2) return EmptyScore(train, test);
    return Score(LinearModel::Fit(train.features, train.target, columns, rows),
                 test);
  }
  if (!HasBothClasses(train, rows)) return EmptyScore(train, test);
  return Score(
      LogisticModel::Fit(train.features, train.target, columns, rows), test);
}

GlobalFeatureGame::GlobalFeatureGame(Dataset train, Dataset test, bool shift)
    : CharacteristicOracle(train.cols()),
      train_(std::move(train)),
      test_(std::move(test)) {
  train_.Validate();
  test_.Validate();
  offset_ = shift ? EmptyScore(train_, test_) : 0.0;
}

double GlobalFeatureGame::Evaluate(const Coalition& coalition) const {
  if (coalition.empty()) return 0.0;
  return FitScore(train_, test_, coalition) - offset_;
}

std::string BaselinePolicyName(BaselinePolicy policy) {
  switch (policy) {
    case BaselinePolicy::kUniformRandomInstance:
      return "uniform";
    case BaselinePolicy::kBottomDecilePool:
      return "bottom-decile";
    case BaselinePolicy::kFixedInstance:
      return "fixed";
  }
  return "unknown";
}

BaselinePolicy ParseBaselinePolicy(const std::string& text) {
  if (text == "uniform") return BaselinePolicy::kUniformRandomInstance;
  if (text == "bottom-decile") return BaselinePolicy::kBottomDecilePool;
  if (text == "fixed") return BaselinePolicy::kFixedInstance;
  throw Error(ErrorCode::kInvalidArgument, "unknown baseline policy '" + text + "'");
}

LocalFeatureGame::LocalFeatureGame(std::shared_ptr<const Model> model,
                                   Dataset data, int instance,
                                   Options options)
    : CharacteristicOracle(data.cols()),
      model_(std::move(model)),
      data_(std::move(data)),
      instance_(instance),
      options_(options) {
  if (instance_ < 0 || instance_ >= data_.rows()) {
    throw Error(ErrorCode::kInvalidArgument, "instance index out of range");
  }
  if (options_.draws < 1) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one baseline draw");
  }
  switch (options_.policy) {
    case BaselinePolicy::kFixedInstance:
      if (options_.fixed_instance < 0 ||
          options_.fixed_instance >= data_.rows()) {
        throw Error(ErrorCode::kInvalidArgument, "baseline index out of range");
      }
      pool_ = {options_.fixed_instance};
      break;
    case BaselinePolicy::kUniformRandomInstance:
      for (int r = 0; r < data_.rows(); ++r) {
        if (r != instance_) pool_.push_back(r);
      }
      break;
    case BaselinePolicy::kBottomDecilePool: {
      std::vector<std::pair<double, int>> scored;
      for (int r = 0; r < data_.rows(); ++r) {
        if (r != instance_) {
          scored.push_back({model_->Predict(RowOf(data_, r)), r});
        }
      }
      std::sort(scored.begin(), scored.end());
      const size_t keep = std::max<size_t>(
          1, static_cast<size_t>(std::ceil(0.1 * scored.size())));
      for (size_t k = 0; k < keep && k < scored.size(); ++k) {
        pool_.push_back(scored[k].second);
      }
      break;
    }
  }
  if (pool_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no baseline instances available");
  }
}

std::vector<double> LocalFeatureGame::Hybrid(const Coalition& coalition,
                                             int baseline) const {
  std::vector<double> row = RowOf(data_, baseline);
  coalition.ForEachMember([&](int i) { row[i] = data_.features(instance_, i); });
  return row;
}

double LocalFeatureGame::Evaluate(const Coalition& coalition) const {
  if (coalition.empty()) return 0.0;
  Rng rng(CoalitionSeed(options_.seed, coalition));
  std::uniform_int_distribution<size_t> pick(0, pool_.size() - 1);
  double total = 0.0;
  for (int k = 0; k < options_.draws; ++k) {
    const int b = pool_.size() == 1 ? pool_[0] : pool_[pick(rng)];
    total += model_->Predict(Hybrid(coalition, b)) -
             model_->Predict(RowOf(data_, b));
  }
  return total / options_.draws;
}

DataValuationGame::DataValuationGame(Dataset train, Dataset test)
    : CharacteristicOracle(train.rows()),
      train_(std::move(train)),
      test_(std::move(test)) {
  train_.Validate();
  test_.Validate();
  empty_score_ = EmptyScore(train_, test_);
}

double DataValuationGame::Evaluate(const Coalition& coalition) const {
  if (coalition.empty()) return 0.0;
  const std::vector<int> rows = coalition.Members();
  return FitScoreRows(train_, test_, rows) - empty_score_;
}

std::vector<RemovalPoint> RemovalCurve(const Dataset& train,
                                       const Dataset& test,
                                       std::span<const double> importances,
                                       double step, double max_fraction) {
  const int n = train.rows();
  if (static_cast<int>(importances.size()) != n) {
    throw Error(ErrorCode::kDimensionMismatch, "one importance per row");
  }
  if (!(step > 0.0) || !(max_fraction >= 0.0) || max_fraction > 1.0) {
    throw Error(ErrorCode::kInvalidArgument, "bad removal step or fraction");
  }
  std::vector<int> order = AllIndices(n);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return importances[a] > importances[b];
  });
  const int blocks = static_cast<int>(std::floor(max_fraction / step + 1e-9));
  std::vector<RemovalPoint> curve;
  for (int k = 0; k <= blocks; ++k) {
    const double fraction = k * step;
    const int removed =
        std::min(n, static_cast<int>(std::lround(fraction * n)));
    std::vector<int> keep(order.begin() + removed, order.end());
    std::sort(keep.begin(), keep.end());
    curve.push_back({fraction, FitScoreRows(train, test, keep)});
  }
  return curve;
}

std::string AttributionMethodName(AttributionMethod method) {
  switch (method) {
    case AttributionMethod::kShapleyMc:
      return "shapley";
    case AttributionMethod::kLeastCore:
      return "leastcore";
    case AttributionMethod::kRandom:
      return "random";
  }
  return "unknown";
}

AttributionResult ShapleyAttribution(const CharacteristicOracle& game,
                                     uint64_t budget, uint64_t seed) {
  const ShapleyEstimate est = ShapleyMc(game, budget, seed);
  AttributionResult out;
  out.method = AttributionMethod::kShapleyMc;
  out.importances = est.phi;
  out.budget_spent = est.oracle_calls;
  return out;
}

AttributionResult LeastCoreAttribution(OraclePtr game, uint64_t budget,
                                       uint64_t seed,
                                       const SolverConfig& base) {
  const int n = game->num_players();
  const uint64_t holdout = budget / 10;
  const uint64_t probe = 10 * static_cast<uint64_t>(n);
  const uint64_t per_step = 2 * static_cast<uint64_t>(base.batch_size);
  if (budget < 1 + holdout + probe + per_step) {
    throw Error(ErrorCode::kBudgetTooSmall,
                "budget " + std::to_string(budget) +
                    " leaves no room for a least-core iteration");
  }
  const auto normalized = Normalize(game);
  SolverConfig config = base;
  config.seed = seed;
  config.enumerate = false;
  config.prox = ProxKind::kAdamSoftmax;
  config.holdout_size = static_cast<int>(std::max<uint64_t>(1, holdout));
  config.max_oracle_calls = budget - holdout - 1;
  config.iterations = static_cast<int64_t>(
      (config.max_oracle_calls - (config.epsilon_hi ? 0 : probe)) / per_step);
  if (config.schedule.kind == StepSchedule::Kind::kLinear) {
    config.schedule.horizon = config.iterations;
  }
  const LeastCoreResult result = MirrorProxSolve(*normalized, config);
  AttributionResult out;
  out.method = AttributionMethod::kLeastCore;
  out.importances = result.payoffs.vector();
  // The grand-coalition value used for normalization plus every solver call.
  out.budget_spent = 1 + normalized->calls();
  out.epsilon_hat = result.epsilon_hat.epsilon_hat;
  return out;
}

AttributionResult RandomAttribution(int players, uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  AttributionResult out;
  out.method = AttributionMethod::kRandom;
  out.importances.resize(players);
  for (double& x : out.importances) x = unit(rng);
  return out;
}

Dataset SyntheticRegression(int rows, std::span<const double> beta,
                            double noise, Rng& rng) {
  if (rows < 2 || beta.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "need 2 rows and 1 feature");
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  Dataset data;
  const int d = static_cast<int>(beta.size());
  data.features.resize(rows, d);
  data.target.resize(rows);
  for (int c = 0; c < d; ++c) data.feature_names.push_back("x" + std::to_string(c));
  for (int r = 0; r < rows; ++r) {
    double y = 0.0;
    for (int c = 0; c < d; ++c) {
      data.features(r, c) = normal(rng);
      y += beta[c] * data.features(r, c);
    }
    data.target[r] = y + noise * normal(rng);
  }
  return data;
}

PlantedNoiseData GeneratePlantedNoise(int train_rows, int test_rows,
                                      int features, double fraction,
                                      double corruption_scale, Rng& rng) {
  if (train_rows < 2 || test_rows < 1 || features < 1 ||
      !(fraction >= 0.0 && fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "bad planted-noise parameters");
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> beta(features);
  for (double& b : beta) b = normal(rng);
  Dataset all = SyntheticRegression(train_rows + test_rows, beta, 0.5, rng);
  std::vector<int> train_ids = AllIndices(train_rows);
  std::vector<int> test_ids(test_rows);
  std::iota(test_ids.begin(), test_ids.end(), train_rows);
  PlantedNoiseData out;
  out.train = all.SelectRows(train_ids);
  out.test = all.SelectRows(test_ids);
  out.corrupted.assign(train_rows, false);
  std::vector<int> order = AllIndices(train_rows);
  std::shuffle(order.begin(), order.end(), rng);
  const int bad = static_cast<int>(std::lround(fraction * train_rows));
  for (int k = 0; k < bad; ++k) {
    out.corrupted[order[k]] = true;
    out.train.target[order[k]] = corruption_scale * normal(rng);
  }
  return out;
}

}  // namespace leastcore
