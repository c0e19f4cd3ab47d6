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


#include "leastcore/cli.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "leastcore/elo.h"
#include "leastcore/exact.h"
#include "leastcore/experiments.h"
#include "leastcore/game_io.h"
#include "leastcore/games.h"
#include "leastcore/iterative.h"
#include "leastcore/shapley_mc.h"
#include "leastcore/text.h"
#include "leastcore/xai.h"

#ifndef LEASTCORE_VERSION
#define LEASTCORE_VERSION "unknown"
#endif
#ifndef LEASTCORE_GIT_REVISION
#define LEASTCORE_GIT_REVISION "unknown"
#endif

namespace leastcore::cli {
namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

StepSchedule ParseSchedule(const std::string& text) {
  const std::vector<std::string> parts = SplitString(text, ':');
  if (parts.size() == 1) return StepSchedule::Constant(ParseDouble(text));
  if (parts[0] == "constant" && parts.size() == 2) {
    return StepSchedule::Constant(ParseDouble(parts[1]));
  }
  if (parts[0] == "linear" && parts.size() == 4) {
    return StepSchedule::Linear(ParseDouble(parts[1]), ParseDouble(parts[2]),
                                ParseInt(parts[3]));
  }
  throw Error(ErrorCode::kInvalidArgument,
              "step schedule must be <eta>, constant:<eta> or "
              "linear:<start>:<end>:<horizon>, got '" + text + "'");
}

// Solver flags left unset fall back to the command's preset.
struct SolverFlags {
  std::optional<int64_t> iterations;
  std::optional<int> batch_size;
  std::optional<std::string> schedule;
  std::optional<double> gamma;
  std::optional<double> mu0;
  std::optional<double> mu_bar;
  std::optional<double> epsilon_hi;
  std::optional<std::string> prox;
  std::optional<std::string> aggregation;
  bool enumerate = false;
  std::optional<int> holdout;
  int64_t trace_every = 0;
  std::optional<uint64_t> max_calls;
  std::optional<double> time_limit;

  SolverConfig Apply(SolverConfig config, uint64_t seed) const {
    const bool preset_tracks_horizon =
        config.schedule.kind == StepSchedule::Kind::kLinear &&
        config.schedule.horizon == config.iterations;
    if (iterations) config.iterations = *iterations;
    if (schedule) {
      config.schedule = ParseSchedule(*schedule);
    } else if (preset_tracks_horizon) {
      config.schedule.horizon = config.iterations;
    }
    if (batch_size) config.batch_size = *batch_size;
    if (gamma) config.gamma = *gamma;
    if (mu0) config.mu0 = *mu0;
    if (mu_bar) config.mu_bar = *mu_bar;
    if (epsilon_hi) config.epsilon_hi = *epsilon_hi;
    if (prox) {
      if (*prox == "adam") {
        config.prox = ProxKind::kAdamSoftmax;
      } else if (*prox == "tailored") {
        config.prox = ProxKind::kTailored;
      } else {
        throw Error(ErrorCode::kInvalidArgument,
                    "prox must be adam or tailored");
      }
    }
    if (aggregation) {
      if (*aggregation == "sum") {
        config.aggregation = LossAggregation::kBatchSum;
      } else if (*aggregation == "mean") {
        config.aggregation = LossAggregation::kBatchMean;
      } else {
        throw Error(ErrorCode::kInvalidArgument,
                    "aggregation must be sum or mean");
      }
    }
    config.enumerate = config.enumerate || enumerate;
    if (holdout) config.holdout_size = *holdout;
    config.trace_every = trace_every;
    if (max_calls) config.max_oracle_calls = *max_calls;
    if (time_limit) config.time_limit_seconds = *time_limit;
    config.seed = seed;
    config.Validate();
    return config;
  }
};

void AddGameOptions(CLI::App* sub, GameSpec& spec) {
  sub->add_option("--game", spec.family,
                  "wvg, majority, unanimity, singleton, graph, mcn or file")
      ->capture_default_str();
  sub->add_option("--n", spec.n, "number of players")->capture_default_str();
  sub->add_option("--dist", spec.dist,
                  "WVG weights: uniform-int:lo:hi, gaussian:mean:sd, "
                  "exponential:rate or beta:a:b")
      ->capture_default_str();
  sub->add_option("--xi", spec.xi, "WVG quota fraction")->capture_default_str();
  sub->add_option("--graph", spec.graph,
                  "er:p, nws:k:p, partition:parts:pin:pout, dualba:m1:m2:p, "
                  "plc:m:p or intersection:m:p")
      ->capture_default_str();
  sub->add_option("--edge-sigma", spec.edge_sigma)->capture_default_str();
  sub->add_option("--positive-fraction", spec.positive_fraction)
      ->capture_default_str();
  sub->add_option("--rules", spec.rules, "MCN rule count")
      ->capture_default_str();
  sub->add_option("--mcn-p", spec.mcn_p)->capture_default_str();
  sub->add_option("--mcn-q", spec.mcn_q)->capture_default_str();
  sub->add_option("--rule-weights", spec.rule_weights)->capture_default_str();
  sub->add_option("--file", spec.file, "game file for --game file");
  sub->add_option("--min-grand", spec.min_grand_value,
                  "redraw games until v(I) exceeds this")
      ->capture_default_str();
}

void AddSolverOptions(CLI::App* sub, SolverFlags& flags) {
  sub->add_option("--T", flags.iterations, "iterations");
  sub->add_option("--B", flags.batch_size, "coalitions per batch");
  sub->add_option("--eta", flags.schedule,
                  "step size: <eta>, constant:<eta> or linear:a:b:horizon");
  sub->add_option("--gamma", flags.gamma);
  sub->add_option("--mu0", flags.mu0);
  sub->add_option("--mu-bar", flags.mu_bar);
  sub->add_option("--epsilon-hi", flags.epsilon_hi);
  sub->add_option("--prox", flags.prox, "adam or tailored");
  sub->add_option("--aggregation", flags.aggregation, "sum or mean");
  sub->add_flag("--enumerate", flags.enumerate,
                "use every coalition as the batch (n <= 20)");
  sub->add_option("--holdout", flags.holdout, "held-out coalitions for eps-hat");
  sub->add_option("--trace-every", flags.trace_every);
  sub->add_option("--max-calls", flags.max_calls, "oracle-call budget");
  sub->add_option("--time-limit", flags.time_limit, "seconds");
}

std::string Csv(double value) { return FormatExact(value); }

json TraceSummary(const std::vector<TracePoint>& trace) {
  json out = json::object();
  out["points"] = trace.size();
  if (trace.empty()) return out;
  double lo = trace.front().epsilon;
  double hi = lo;
  for (const TracePoint& t : trace) {
    lo = std::min(lo, t.epsilon);
    hi = std::max(hi, t.epsilon);
  }
  out["first_epsilon"] = trace.front().epsilon;
  out["last_epsilon"] = trace.back().epsilon;
  out["min_epsilon"] = lo;
  out["max_epsilon"] = hi;
  json points = json::array();
  for (const TracePoint& t : trace) {
    points.push_back({t.iteration, t.epsilon, t.mu, t.step});
  }
  out["iteration_epsilon_mu_step"] = points;
  return out;
}

std::vector<int> TopPlayers(std::span<const double> payoffs, int k) {
  std::vector<int> order(payoffs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return payoffs[a] > payoffs[b]; });
  order.resize(std::min<size_t>(order.size(), std::max(0, k)));
  return order;
}

// Shared scaffolding for one run: echo, timing, outputs, JSON record.
class RunContext {
 public:
  RunContext(std::string command, const std::vector<std::string>& args,
             const CLI::App* sub, uint64_t seed)
      : start_(Clock::now()) {
    record_["command"] = std::move(command);
    record_["arguments"] = args;
    record_["config"] = sub->config_to_str(true, false);
    record_["seed"] = seed;
    record_["version"] = LEASTCORE_VERSION;
    record_["git_revision"] = LEASTCORE_GIT_REVISION;
    record_["outputs"] = json::array();
  }

  json& diagnostics() { return record_["diagnostics"]; }

  void Write(const std::string& path, const std::string& contents) {
    WriteTextFile(path, contents);
    record_["outputs"].push_back(path);
  }

  void Finish(const std::string& json_path) {
    record_["wall_seconds"] =
        std::chrono::duration<double>(Clock::now() - start_).count();
    if (!json_path.empty()) {
      record_["outputs"].push_back(json_path);
      WriteTextFile(json_path, record_.dump(2) + "\n");
    }
  }

 private:
  Clock::time_point start_;
  json record_;
};

struct CommonFlags {
  uint64_t seed = 0;
  std::string out;
};

// ---------------------------------------------------------------- solve

struct SolveFlags {
  GameSpec game;
  SolverFlags solver;
  CommonFlags common;
  std::string method = "cl";
  int k = 1000;
  std::optional<double> epsilon;
  double tolerance = 1e-3;
  int top = 5;
  std::string payoffs_csv;
};

int RunSolve(const SolveFlags& f, const CLI::App* sub,
             const std::vector<std::string>& args, std::ostream& out) {
  RunContext ctx("solve", args, sub, f.common.seed);
  const OraclePtr raw = BuildGame(f.game, DeriveSeed(f.common.seed, 0));
  const auto game = Normalize(raw);
  const int n = game->num_players();
  SolverConfig config =
      f.solver.Apply(SolverConfig::DefaultPreset(), DeriveSeed(f.common.seed, 1));

  json& diag = ctx.diagnostics();
  diag["solver"] = f.method;
  diag["players"] = n;
  diag["raw_grand_value"] = game->raw_grand_value();
  std::vector<double> payoffs;
  double epsilon_final = 0.0;
  std::optional<SampleEstimate> estimate;

  if (f.method == "lp-exact" || f.method == "lp-sampled") {
    LeastCoreLpResult lp;
    if (f.method == "lp-exact") {
      lp = LeastCoreExact(*game);
    } else {
      Rng rng(DeriveSeed(f.common.seed, 2));
      lp = SampledLpLeastCore(*game, f.k, rng);
      diag["k"] = f.k;
    }
    payoffs = lp.payoffs.vector();
    epsilon_final = lp.epsilon;
    if (n <= kMaxEnumerablePlayers) {
      std::vector<Coalition> all;
      for (const Coalition& c : EnumerateCoalitions(n)) all.push_back(c);
      estimate = EpsilonHat(payoffs, all, *game);
    } else {
      Rng rng(DeriveSeed(f.common.seed, 3));
      estimate = EpsilonHat(
          payoffs, SampleCoalitions(n, config.holdout_size, rng), *game);
    }
  } else {
    LeastCoreResult result;
    if (f.method == "cl") {
      result = MirrorProxSolve(*game, config);
    } else if (f.method == "sgd" || f.method == "cyclic") {
      const bool cyclic = f.method == "cyclic";
      if (f.epsilon) {
        result = cyclic ? CyclicProjectionSolve(*game, *f.epsilon, config)
                        : SgdSolve(*game, *f.epsilon, config);
      } else {
        result = LcvViaBisection(
            *game, cyclic ? FeasibilitySolver::kCyclic : FeasibilitySolver::kSgd,
            f.tolerance, config);
      }
    } else {
      throw Error(ErrorCode::kInvalidArgument,
                  "unknown solver '" + f.method +
                      "' (cl, sgd, cyclic, lp-exact, lp-sampled)");
    }
    payoffs = result.payoffs.vector();
    epsilon_final = result.epsilon_final;
    estimate = result.epsilon_hat;
    diag["mu_final"] = result.mu_final;
    diag["iterations"] = result.iterations_run;
    diag["solver_seed"] = result.seed;
    diag["notes"] = result.notes;
    diag["trace"] = TraceSummary(result.trace);
  }
  diag["oracle_calls"] = raw->calls() + game->calls();
  diag["epsilon_final"] = epsilon_final;
  diag["epsilon_hat"] = estimate->epsilon_hat;
  diag["epsilon_hat_sample"] = estimate->sample_size;
  diag["epsilon_hat_argmax"] = CoalitionToHex(estimate->argmax);
  diag["payoffs"] = payoffs;

  out << "epsilon_final " << FormatExact(epsilon_final) << "\n";
  out << "epsilon_hat " << FormatExact(estimate->epsilon_hat) << "\n";
  for (int i : TopPlayers(payoffs, f.top)) {
    out << "player " << i << " " << FormatExact(payoffs[i]) << "\n";
  }
  if (!f.payoffs_csv.empty()) {
    std::string csv = "player,payoff\n";
    for (int i = 0; i < n; ++i) {
      csv += std::to_string(i) + "," + Csv(payoffs[i]) + "\n";
    }
    ctx.Write(f.payoffs_csv, csv);
  }
  ctx.Finish(f.common.out);
  return 0;
}

// ------------------------------------------------------------- generate

struct GenerateFlags {
  GameSpec game;
  CommonFlags common;
};

int RunGenerate(const GenerateFlags& f, const CLI::App* sub,
                const std::vector<std::string>& args, std::ostream& out) {
  RunContext ctx("generate", args, sub, f.common.seed);
  if (f.common.out.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "generate needs --out");
  }
  const OraclePtr game = BuildGame(f.game, DeriveSeed(f.common.seed, 0));
  SaveGame(f.common.out, *game);
  out << "wrote " << f.common.out << "\n";
  return 0;
}

// ---------------------------------------------------------------- sweep

struct SweepFlags {
  GameSpec game;
  SolverFlags solver;
  CommonFlags common;
  std::string x_param = "xi";
  std::string x_range = "0.5";
  std::string y_param = "n";
  std::string y_range = "10";
  int games = 100;
};

int RunSweep(const SweepFlags& f, const CLI::App* sub,
             const std::vector<std::string>& args, std::ostream& out) {
  if (f.common.out.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "sweep needs --out <prefix>");
  }
  RunContext ctx("sweep", args, sub, f.common.seed);
  const std::vector<double> xs = ParseRange(f.x_range);
  const std::vector<double> ys = ParseRange(f.y_range);
  const SolverConfig config =
      f.solver.Apply(SolverConfig::DefaultPreset(), f.common.seed);
  Matrix matrix;
  matrix.rows = static_cast<int>(ys.size());
  matrix.cols = static_cast<int>(xs.size());
  std::string csv = "x_index,y_index," + f.x_param + "," + f.y_param +
                    ",mean_lcv,stderr,games\n";
  for (int r = 0; r < matrix.rows; ++r) {
    for (int c = 0; c < matrix.cols; ++c) {
      GameSpec spec = f.game;
      spec.Set(f.x_param, xs[c]);
      spec.Set(f.y_param, ys[r]);
      const uint64_t cell_seed = DeriveSeed(
          f.common.seed, static_cast<uint64_t>(r) * matrix.cols + c);
      const CellStats stats = MeanLeastCoreValue(spec, f.games, config, cell_seed);
      matrix.values.push_back(stats.mean);
      csv += std::to_string(c) + "," + std::to_string(r) + "," + Csv(xs[c]) +
             "," + Csv(ys[r]) + "," + Csv(stats.mean) + "," +
             Csv(stats.standard_error) + "," + std::to_string(stats.games) +
             "\n";
    }
  }
  ctx.Write(f.common.out + ".dat", FormatMatrixDat(matrix));
  ctx.Write(f.common.out + ".csv", csv);
  ctx.diagnostics()["cells"] = matrix.rows * matrix.cols;
  ctx.diagnostics()["games_per_cell"] = f.games;
  ctx.Finish(f.common.out + ".json");
  out << "wrote " << f.common.out << ".dat (" << matrix.rows << "x"
      << matrix.cols << ")\n";
  return 0;
}

// --------------------------------------------------------------- timing

struct TimingFlags {
  GameSpec game;
  SolverFlags solver;
  CommonFlags common;
  std::string ks = "500,1000,2000,4000,8000,16000";
  int repeats = 2;
  int eval_size = 50000;
  std::string match = "iterations";
};

int RunTiming(const TimingFlags& f, const CLI::App* sub,
              const std::vector<std::string>& args, std::ostream& out) {
  if (f.common.out.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "timing needs --out <prefix>");
  }
  if (f.repeats < 1 || f.eval_size < 1) {
    throw Error(ErrorCode::kInvalidArgument, "repeats and eval size must be >= 1");
  }
  RaceMatch match;
  if (f.match == "time") {
    match = RaceMatch::kWallClock;
  } else if (f.match == "iterations") {
    match = RaceMatch::kIterations;
  } else {
    throw Error(ErrorCode::kInvalidArgument, "match must be time or iterations");
  }
  const std::vector<int> ks = ParseIntList(f.ks);
  if (ks.empty() || !std::is_sorted(ks.begin(), ks.end()) ||
      std::adjacent_find(ks.begin(), ks.end()) != ks.end() || ks.front() < 1) {
    throw Error(ErrorCode::kInvalidArgument, "k values must ascend from >= 1");
  }
  RunContext ctx("timing", args, sub, f.common.seed);
  const SolverConfig config =
      f.solver.Apply(SolverConfig::TimingPreset(), f.common.seed);

  std::vector<std::vector<RaceResult>> by_k(ks.size());
  json xis = json::array();
  for (int r = 0; r < f.repeats; ++r) {
    const uint64_t repeat_seed = DeriveSeed(f.common.seed, static_cast<uint64_t>(r));
    GameSpec spec = f.game;
    Rng xi_rng(DeriveSeed(repeat_seed, 0));
    spec.xi = DrawTimingXi(xi_rng);
    xis.push_back(spec.xi);
    const auto game = Normalize(BuildGame(spec, DeriveSeed(repeat_seed, 1)));
    Rng eval_rng(DeriveSeed(repeat_seed, 2));
    const std::vector<Coalition> evaluation =
        SampleCoalitions(game->num_players(), f.eval_size, eval_rng);
    for (size_t i = 0; i < ks.size(); ++i) {
      by_k[i].push_back(RaceOnce(*game, ks[i], config, evaluation,
                                 DeriveSeed(repeat_seed, 3), match));
    }
  }

  const bool wall = match == RaceMatch::kWallClock;
  std::string csv = wall ? "k,t_mean,t_stderr," : "k,cl_iterations,";
  csv += "lp_eps_hat_mean,lp_eps_hat_stderr,cl_eps_hat_mean,"
         "cl_eps_hat_stderr,repeats\n";
  json rows = json::array();
  for (size_t i = 0; i < ks.size(); ++i) {
    std::vector<double> t, lp, cl;
    json raw = json::array();
    for (const RaceResult& race : by_k[i]) {
      t.push_back(race.lp_seconds);
      lp.push_back(race.lp_epsilon_hat);
      cl.push_back(race.cl_epsilon_hat);
      raw.push_back({{"lp_seconds", race.lp_seconds},
                     {"cl_seconds", race.cl_seconds},
                     {"cl_iterations", race.cl_iterations},
                     {"lp_epsilon_hat", race.lp_epsilon_hat},
                     {"cl_epsilon_hat", race.cl_epsilon_hat}});
    }
    const CellStats ts = Summarize(t);
    const CellStats ls = Summarize(lp);
    const CellStats cs = Summarize(cl);
    csv += std::to_string(ks[i]) + ",";
    csv += wall ? Csv(ts.mean) + "," + Csv(ts.standard_error) + ","
                : std::to_string(config.iterations) + ",";
    csv += Csv(ls.mean) + "," + Csv(ls.standard_error) + "," + Csv(cs.mean) +
           "," + Csv(cs.standard_error) + "," + std::to_string(f.repeats) + "\n";
    rows.push_back({{"k", ks[i]}, {"races", raw}});
  }
  ctx.Write(f.common.out + ".csv", csv);
  ctx.diagnostics()["xi_per_repeat"] = xis;
  ctx.diagnostics()["per_k"] = rows;
  ctx.diagnostics()["match"] = f.match;
  ctx.Finish(f.common.out + ".json");
  out << "wrote " << f.common.out << ".csv (" << ks.size() << " rows)\n";
  return 0;
}

// ------------------------------------------------------------ valuation

struct ValuationFlags {
  SolverFlags solver;
  CommonFlags common;
  std::string data;
  std::string target = "target";
  std::string task = "regression";
  double split = 0.8;
  std::string synthetic = "planted:200:200:5:0.1:5";
  uint64_t budget = 50000;
  std::string methods = "shapley,leastcore,random";
  double step = 0.05;
  double max_fraction = 0.5;
};

std::vector<AttributionMethod> ParseMethods(const std::string& text) {
  std::vector<AttributionMethod> out;
  for (const std::string& name : ParseNameList(text)) {
    AttributionMethod m;
    if (name == "shapley") {
      m = AttributionMethod::kShapleyMc;
    } else if (name == "leastcore") {
      m = AttributionMethod::kLeastCore;
    } else if (name == "random") {
      m = AttributionMethod::kRandom;
    } else {
      throw Error(ErrorCode::kInvalidArgument,
                  "unknown method '" + name + "' (shapley, leastcore, random)");
    }
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  }
  if (out.empty()) throw Error(ErrorCode::kInvalidArgument, "no methods given");
  std::sort(out.begin(), out.end());
  return out;
}

AttributionResult Attribute(AttributionMethod method, OraclePtr game,
                            uint64_t budget, uint64_t seed,
                            const SolverConfig& config) {
  switch (method) {
    case AttributionMethod::kShapleyMc:
      return ShapleyAttribution(*game, budget, seed);
    case AttributionMethod::kLeastCore:
      return LeastCoreAttribution(game, budget, seed, config);
    case AttributionMethod::kRandom:
      return RandomAttribution(game->num_players(), seed);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown method");
}

std::string CurveCsv(const std::vector<AttributionMethod>& methods,
                     const std::vector<std::vector<RemovalPoint>>& curves) {
  std::string csv = "fraction";
  for (AttributionMethod m : methods) csv += ",score_" + AttributionMethodName(m);
  csv += "\n";
  for (size_t k = 0; k < curves.front().size(); ++k) {
    csv += Csv(curves.front()[k].fraction);
    for (const auto& curve : curves) csv += "," + Csv(curve[k].score);
    csv += "\n";
  }
  return csv;
}

int RunValuation(const ValuationFlags& f, const CLI::App* sub,
                 const std::vector<std::string>& args, std::ostream& out) {
  if (f.common.out.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "valuation needs --out <prefix>");
  }
  RunContext ctx("valuation", args, sub, f.common.seed);
  const std::vector<AttributionMethod> methods = ParseMethods(f.methods);
  Dataset train, test;
  std::vector<bool> corrupted;
  if (!f.data.empty()) {
    const Dataset all = LoadCsv(f.data, f.target, ParseTaskKind(f.task));
    TrainTestSplit split = SplitTrainTest(all, f.split, DeriveSeed(f.common.seed, 0));
    if (split.empty_test) {
      throw Error(ErrorCode::kInvalidArgument,
                  "train fraction leaves no test rows");
    }
    train = std::move(split.train);
    test = std::move(split.test);
  } else {
    const std::vector<std::string> p = SplitString(f.synthetic, ':');
    if (p.size() != 6 || p[0] != "planted") {
      throw Error(ErrorCode::kInvalidArgument,
                  "--synthetic must be planted:train:test:features:fraction:scale");
    }
    Rng rng(DeriveSeed(f.common.seed, 0));
    PlantedNoiseData data = GeneratePlantedNoise(
        static_cast<int>(ParseInt(p[1])), static_cast<int>(ParseInt(p[2])),
        static_cast<int>(ParseInt(p[3])), ParseDouble(p[4]), ParseDouble(p[5]),
        rng);
    train = std::move(data.train);
    test = std::move(data.test);
    corrupted = std::move(data.corrupted);
  }
  const SolverConfig config =
      f.solver.Apply(SolverConfig::DefaultPreset(), f.common.seed);
  const auto game = std::make_shared<DataValuationGame>(train, test);

  std::vector<AttributionResult> results;
  std::vector<std::vector<RemovalPoint>> curves;
  json& diag = ctx.diagnostics();
  for (AttributionMethod m : methods) {
    results.push_back(
        Attribute(m, game, f.budget, DeriveSeed(f.common.seed, 10 + static_cast<int>(m)), config));
    curves.push_back(
        RemovalCurve(train, test, results.back().importances, f.step, f.max_fraction));
    json entry = {{"budget_spent", results.back().budget_spent}};
    if (results.back().epsilon_hat) entry["epsilon_hat"] = *results.back().epsilon_hat;
    diag[AttributionMethodName(m)] = entry;
  }
  std::string imp = "index";
  for (AttributionMethod m : methods) imp += "," + AttributionMethodName(m);
  if (!corrupted.empty()) imp += ",corrupted";
  imp += "\n";
  for (int i = 0; i < train.rows(); ++i) {
    imp += std::to_string(i);
    for (const AttributionResult& r : results) imp += "," + Csv(r.importances[i]);
    if (!corrupted.empty()) imp += corrupted[i] ? ",1" : ",0";
    imp += "\n";
  }
  ctx.Write(f.common.out + "_curve.csv", CurveCsv(methods, curves));
  ctx.Write(f.common.out + "_importance.csv", imp);
  diag["train_rows"] = train.rows();
  diag["test_rows"] = test.rows();
  ctx.Finish(f.common.out + ".json");
  out << "wrote " << f.common.out << "_curve.csv and " << f.common.out
      << "_importance.csv\n";
  return 0;
}

// -------------------------------------------------------- valuation-elo

struct EloFlags {
  SolverFlags solver;
  CommonFlags common;
  std::string train;
  std::string synthetic = "arena:20:40";
  int dr = 1000;
  int dt = 10000;
  uint64_t budget = 50000;
  std::string methods = "shapley,leastcore,random";
  int mm_sweeps = 20000;
  double mm_tolerance = 1e-10;
  double step = 0.05;
  double max_fraction = 0.5;
};

std::vector<RemovalPoint> EloRemovalCurve(const std::vector<MatchRecord>& train,
                                          const std::vector<MatchRecord>& test,
                                          int models, const MmOptions& options,
                                          std::span<const double> importances,
                                          double step, double max_fraction) {
  const int n = static_cast<int>(train.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return importances[a] > importances[b];
  });
  const int blocks = static_cast<int>(std::floor(max_fraction / step + 1e-9));
  std::vector<RemovalPoint> curve;
  for (int k = 0; k <= blocks; ++k) {
    const double fraction = k * step;
    const int removed = std::min(n, static_cast<int>(std::lround(fraction * n)));
    std::vector<int> keep(order.begin() + removed, order.end());
    std::sort(keep.begin(), keep.end());
    std::vector<MatchRecord> subset;
    for (int i : keep) subset.push_back(train[i]);
    const RatingVector fit = MmFit(subset, models, options);
    curve.push_back({fraction, 2.0 - CrossEntropy(fit.ratings, test)});
  }
  return curve;
}

int RunValuationElo(const EloFlags& f, const CLI::App* sub,
                    const std::vector<std::string>& args, std::ostream& out) {
  if (f.common.out.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "valuation-elo needs --out <prefix>");
  }
  if (f.dr < 1 || f.dt < 1) {
    throw Error(ErrorCode::kInvalidArgument, "--dr and --dt must be >= 1");
  }
  RunContext ctx("valuation-elo", args, sub, f.common.seed);
  const std::vector<AttributionMethod> methods = ParseMethods(f.methods);
  MatchTable table;
  if (!f.train.empty()) {
    table = LoadMatchCsv(f.train);
  } else {
    const std::vector<std::string> p = SplitString(f.synthetic, ':');
    if (p.size() != 3 || p[0] != "arena") {
      throw Error(ErrorCode::kInvalidArgument, "--synthetic must be arena:models:gap");
    }
    const int models = static_cast<int>(ParseInt(p[1]));
    const double gap = ParseDouble(p[2]);
    std::vector<double> ratings(models);
    for (int i = 0; i < models; ++i) ratings[i] = gap * (i - 0.5 * (models - 1));
    Rng rng(DeriveSeed(f.common.seed, 0));
    table.matches = GenerateMatches(ratings, f.dr + f.dt, rng);
    for (int i = 0; i < models; ++i) table.model_names.push_back("m" + std::to_string(i));
  }
  if (static_cast<int>(table.matches.size()) < f.dr + f.dt) {
    throw Error(ErrorCode::kInvalidArgument,
                "need " + std::to_string(f.dr + f.dt) + " matches, have " +
                    std::to_string(table.matches.size()));
  }
  std::vector<MatchRecord> train(table.matches.begin(), table.matches.begin() + f.dr);
  std::vector<MatchRecord> test(table.matches.begin() + f.dr,
                                table.matches.begin() + f.dr + f.dt);
  MmOptions mm;
  mm.max_sweeps = f.mm_sweeps;
  mm.tolerance = f.mm_tolerance;
  const auto game =
      std::make_shared<ArenaValuationGame>(train, test, table.num_models(), mm);
  const SolverConfig config =
      f.solver.Apply(SolverConfig::DefaultPreset(), f.common.seed);

  std::vector<AttributionResult> results;
  std::vector<std::vector<RemovalPoint>> curves;
  json& diag = ctx.diagnostics();
  for (AttributionMethod m : methods) {
    results.push_back(
        Attribute(m, game, f.budget, DeriveSeed(f.common.seed, 10 + static_cast<int>(m)), config));
    curves.push_back(EloRemovalCurve(train, test, table.num_models(), mm,
                                     results.back().importances, f.step,
                                     f.max_fraction));
    json entry = {{"budget_spent", results.back().budget_spent}};
    if (results.back().epsilon_hat) entry["epsilon_hat"] = *results.back().epsilon_hat;
    diag[AttributionMethodName(m)] = entry;
  }
  std::string imp = "index,model_a,model_b,winner";
  for (AttributionMethod m : methods) imp += "," + AttributionMethodName(m);
  imp += "\n";
  for (int i = 0; i < f.dr; ++i) {
    imp += std::to_string(i) + "," + table.model_names[train[i].model_a] + "," +
           table.model_names[train[i].model_b] + (train[i].a_wins ? ",a" : ",b");
    for (const AttributionResult& r : results) imp += "," + Csv(r.importances[i]);
    imp += "\n";
  }
  ctx.Write(f.common.out + "_curve.csv", CurveCsv(methods, curves));
  ctx.Write(f.common.out + "_importance.csv", imp);
  diag["baseline_cross_entropy"] = game->baseline_cross_entropy();
  ctx.Finish(f.common.out + ".json");
  out << "wrote " << f.common.out << "_curve.csv and " << f.common.out
      << "_importance.csv\n";
  return 0;
}

// Reads `key=value` lines (blank lines and # comments skipped) into
// `--key=value` arguments.
std::vector<std::string> ConfigArguments(const std::string& path) {
  std::vector<std::string> out;
  const std::vector<std::string> lines = SplitString(ReadTextFile(path), '\n');
  for (size_t k = 0; k < lines.size(); ++k) {
    const std::string line = Trim(lines[k]);
    if (line.empty() || line[0] == '#' || line[0] == ';' || line[0] == '[') {
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kParseError, path + " line " +
                                              std::to_string(k + 1) +
                                              ": expected key=value");
    }
    std::string key = Trim(line.substr(0, eq));
    std::string value = Trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (key.rfind("--", 0) != 0) key = "--" + key;
    if (key == "--config") continue;
    out.push_back(key + "=" + value);
  }
  return out;
}

// Splices config-file arguments in right after the subcommand name so any
// flag given on the command line wins.
std::vector<std::string> ExpandConfig(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::string config;
  for (size_t k = 0; k < args.size(); ++k) {
    if (args[k] == "--config" && k + 1 < args.size()) {
      config = args[++k];
    } else if (args[k].rfind("--config=", 0) == 0) {
      config = args[k].substr(9);
    } else {
      rest.push_back(args[k]);
    }
  }
  if (config.empty() || rest.size() < 2) return rest;
  std::vector<std::string> out(rest.begin(), rest.begin() + 2);
  const std::vector<std::string> extra = ConfigArguments(config);
  out.insert(out.end(), extra.begin(), extra.end());
  out.insert(out.end(), rest.begin() + 2, rest.end());
  return out;
}

}  // namespace

int Run(const std::vector<std::string>& raw_args, std::ostream& out,
        std::ostream& err) {
  try {
    const std::vector<std::string> args = ExpandConfig(raw_args);
    CLI::App app{"Least-core solvers, generators and experiments", "leastcore"};
    app.set_version_flag("--version", std::string(LEASTCORE_VERSION) + " (" +
                                          LEASTCORE_GIT_REVISION + ")");
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    app.add_option("--config", "key=value file of flags for the subcommand");

    SolveFlags solve;
    CLI::App* solve_cmd = app.add_subcommand("solve", "solve one game");
    AddGameOptions(solve_cmd, solve.game);
    AddSolverOptions(solve_cmd, solve.solver);
    solve_cmd->add_option("--solver", solve.method,
                          "cl, sgd, cyclic, lp-exact or lp-sampled")
        ->capture_default_str();
    solve_cmd->add_option("--k", solve.k, "rows for lp-sampled")->capture_default_str();
    solve_cmd->add_option("--epsilon", solve.epsilon,
                          "fixed epsilon for sgd/cyclic (default: bisection)");
    solve_cmd->add_option("--tol", solve.tolerance, "bisection tolerance")
        ->capture_default_str();
    solve_cmd->add_option("--top", solve.top)->capture_default_str();
    solve_cmd->add_option("--payoffs", solve.payoffs_csv, "payoff CSV path");
    solve_cmd->add_option("--seed", solve.common.seed)->capture_default_str();
    solve_cmd->add_option("--out", solve.common.out, "JSON run record path");

    GenerateFlags generate;
    CLI::App* gen_cmd = app.add_subcommand("generate", "write a game file");
    AddGameOptions(gen_cmd, generate.game);
    gen_cmd->add_option("--seed", generate.common.seed)->capture_default_str();
    gen_cmd->add_option("--out", generate.common.out, "game file path");

    SweepFlags sweep;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "mean least-core value over a 2-D grid");
    AddGameOptions(sweep_cmd, sweep.game);
    AddSolverOptions(sweep_cmd, sweep.solver);
    sweep_cmd->add_option("--x-param", sweep.x_param)->capture_default_str();
    sweep_cmd->add_option("--x-range", sweep.x_range, "lo:hi:steps or a value")
        ->capture_default_str();
    sweep_cmd->add_option("--y-param", sweep.y_param)->capture_default_str();
    sweep_cmd->add_option("--y-range", sweep.y_range)->capture_default_str();
    sweep_cmd->add_option("--games", sweep.games, "games per cell")
        ->capture_default_str();
    sweep_cmd->add_option("--seed", sweep.common.seed)->capture_default_str();
    sweep_cmd->add_option("--out", sweep.common.out, "output prefix");

    TimingFlags timing;
    timing.game.n = 100;
    CLI::App* timing_cmd =
        app.add_subcommand("timing", "sampled LP versus CL at matched cost");
    AddGameOptions(timing_cmd, timing.game);
    AddSolverOptions(timing_cmd, timing.solver);
    timing_cmd->add_option("--ks", timing.ks, "ascending LP row counts")
        ->capture_default_str();
    timing_cmd->add_option("--repeats", timing.repeats)->capture_default_str();
    timing_cmd->add_option("--eval-size", timing.eval_size)->capture_default_str();
    timing_cmd->add_option("--match", timing.match,
                           "time (wall-clock race) or iterations (deterministic)")
        ->capture_default_str();
    timing_cmd->add_option("--seed", timing.common.seed)->capture_default_str();
    timing_cmd->add_option("--out", timing.common.out, "output prefix");

    ValuationFlags valuation;
    CLI::App* val_cmd =
        app.add_subcommand("valuation", "data valuation and removal curves");
    AddSolverOptions(val_cmd, valuation.solver);
    val_cmd->add_option("--data", valuation.data, "CSV dataset");
    val_cmd->add_option("--target", valuation.target)->capture_default_str();
    val_cmd->add_option("--task", valuation.task, "regression or classification")
        ->capture_default_str();
    val_cmd->add_option("--split", valuation.split, "train fraction")
        ->capture_default_str();
    val_cmd->add_option("--synthetic", valuation.synthetic,
                        "planted:train:test:features:fraction:scale")
        ->capture_default_str();
    val_cmd->add_option("--budget", valuation.budget)->capture_default_str();
    val_cmd->add_option("--methods", valuation.methods)->capture_default_str();
    val_cmd->add_option("--step", valuation.step)->capture_default_str();
    val_cmd->add_option("--max-fraction", valuation.max_fraction)
        ->capture_default_str();
    val_cmd->add_option("--seed", valuation.common.seed)->capture_default_str();
    val_cmd->add_option("--out", valuation.common.out, "output prefix");

    EloFlags elo;
    CLI::App* elo_cmd = app.add_subcommand(
        "valuation-elo", "value pairwise-preference training matches");
    AddSolverOptions(elo_cmd, elo.solver);
    elo_cmd->add_option("--train", elo.train, "match CSV (model_a,model_b,winner)");
    elo_cmd->add_option("--synthetic", elo.synthetic, "arena:models:gap")
        ->capture_default_str();
    elo_cmd->add_option("--dr", elo.dr, "training matches")->capture_default_str();
    elo_cmd->add_option("--dt", elo.dt, "test matches")->capture_default_str();
    elo_cmd->add_option("--budget", elo.budget)->capture_default_str();
    elo_cmd->add_option("--methods", elo.methods)->capture_default_str();
    elo_cmd->add_option("--mm-sweeps", elo.mm_sweeps)->capture_default_str();
    elo_cmd->add_option("--mm-tol", elo.mm_tolerance)->capture_default_str();
    elo_cmd->add_option("--step", elo.step)->capture_default_str();
    elo_cmd->add_option("--max-fraction", elo.max_fraction)->capture_default_str();
    elo_cmd->add_option("--seed", elo.common.seed)->capture_default_str();
    elo_cmd->add_option("--out", elo.common.out, "output prefix");

    std::vector<std::string> reversed(args.begin() + (args.empty() ? 0 : 1),
                                      args.end());
    std::reverse(reversed.begin(), reversed.end());
    try {
      app.parse(reversed);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? 0 : 2;
    }

    if (*solve_cmd) return RunSolve(solve, solve_cmd, args, out);
    if (*gen_cmd) return RunGenerate(generate, gen_cmd, args, out);
    if (*sweep_cmd) return RunSweep(sweep, sweep_cmd, args, out);
    if (*timing_cmd) return RunTiming(timing, timing_cmd, args, out);
    if (*val_cmd) return RunValuation(valuation, val_cmd, args, out);
    if (*elo_cmd) return RunValuationElo(elo, elo_cmd, args, out);
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    err << "error: Internal: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace leastcore::cli
