// Copyright 2026 The invskill Authors
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

#include "invskill/cli.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "invskill/assign.h"
#include "invskill/core.h"
#include "invskill/errors.h"
#include "invskill/model.h"
#include "invskill/synth.h"
#include "invskill/train.h"
#include "json.hpp"

namespace invskill {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Bad flag values detected after parsing; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GenDataFlags {
  std::string condition;
  int n = 20;
  int points = 200;
  int aux = 0;
  std::optional<uint64_t> seed;
  std::string config;
  std::string out;
};

struct PairFlags {
  std::string forward;
  std::string inverse;
  std::string out;
  std::string report;
  std::string cost_matrix;
};

struct TrainFlags {
  std::string paired;
  std::string aux;
  std::string config;
  std::string out;
  std::optional<uint64_t> seed;
  std::optional<int> steps, batch_size, obs_min, obs_max, n_query, log_every;
  std::optional<double> lr, weight_decay, p_aux;
  bool keep_checkpoints = false;
};

struct InferFlags {
  std::string ckpt;
  std::string obs;
  std::string obs_role = "forward";
  std::string psi;
  std::string target = "inverse";
  int grid = kDefaultQueryGrid;
  std::string out;
};

struct EvalFlags {
  std::string ckpt;
  int n_obs = kEvalObservations;
  int points = 200;
  std::string out;
};

struct ExperimentFlags {
  std::string conditions = "all";
  int seeds = 5;
  std::string config;
  std::string out;
  std::optional<uint64_t> seed;
  std::optional<int> jobs, steps, n_pairs, points;
};

// Master seed precedence: --seed flag, then config file, then the
// INVSKILL_SEED environment variable, then 0.
uint64_t ResolveSeed(const std::optional<uint64_t>& flag,
                     const std::optional<uint64_t>& from_config) {
  if (flag) return *flag;
  if (from_config) return *from_config;
  if (const char* env = std::getenv("INVSKILL_SEED"); env != nullptr) {
    try {
      size_t used = 0;
      const uint64_t v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("INVSKILL_SEED is not an unsigned integer");
  }
  return 0;
}

// Config files hold one JSON object whose keys are TrainConfig and SynthSpec
// field names.
struct FileConfig {
  TrainConfig train;
  std::optional<uint64_t> seed;
  std::optional<int> n_pairs;
  std::optional<int> n_points;
  std::optional<std::string> condition;
};

FileConfig LoadConfig(const std::string& path) {
  FileConfig fc;
  if (path.empty()) return fc;
  const std::string text = ReadFile(path);
  std::vector<std::string> unknown;
  OverlayTrainConfig(text, fc.train, &unknown);
  const json j = json::parse(text);
  if (j.contains("seed")) fc.seed = fc.train.seed;
  for (const std::string& key : unknown) {
    const json& v = j[key];
    if (key == "n_pairs" && v.is_number_integer()) {
      fc.n_pairs = v.get<int>();
    } else if (key == "n_points" && v.is_number_integer()) {
      fc.n_points = v.get<int>();
    } else if (key == "condition" && v.is_string()) {
      fc.condition = v.get<std::string>();
    } else if (key == "amplitude_min" || key == "amplitude_max") {
      if (!v.is_number() ||
          v.get<double>() != (key == "amplitude_min" ? kAmplitudeMin
                                                     : kAmplitudeMax)) {
        throw UsageError("config: amplitude bounds are fixed to [0.1, 0.25]");
      }
    } else {
      throw UsageError("config: unknown or mistyped key '" + key + "'");
    }
  }
  return fc;
}

Condition RequireCondition(const std::string& name) {
  const std::optional<Condition> c = ParseCondition(name);
  if (!c) {
    throw UsageError("unknown condition '" + name +
                     "' (expected random, paired-noisy, paired-perfect or "
                     "uniform)");
  }
  return *c;
}

void EnsureDir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIoError,
                "cannot create directory " + dir.string() + ": " + ec.message());
  }
}

// ---- gen-data ---------------------------------------------------------------

int RunGenData(const GenDataFlags& f, const CLI::App& cmd, std::ostream& out) {
  const FileConfig fc = LoadConfig(f.config);
  SynthSpec spec;
  spec.condition = RequireCondition(
      cmd.count("--condition") > 0 ? f.condition
                                   : fc.condition.value_or(f.condition));
  spec.n_pairs = cmd.count("--n") > 0 ? f.n : fc.n_pairs.value_or(f.n);
  spec.n_points =
      cmd.count("--points") > 0 ? f.points : fc.n_points.value_or(f.points);
  if (f.aux < 0) throw UsageError("--aux must be >= 0");
  const uint64_t master = ResolveSeed(f.seed, fc.seed);
  spec.seed = DeriveSeed(master, "gen-data");
  try {
    ValidateSynthSpec(spec);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }

  const ConditionData data = MakeConditionDatasets(spec);
  std::vector<Demonstration> aux;
  if (f.aux > 0) {
    Rng rng(DeriveSeed(master, "gen-data", {1}));
    for (int i = 0; i < f.aux; ++i) {
      aux.push_back(ForwardDemo(rng.Uniform(spec.amplitude_min,
                                            spec.amplitude_max),
                                spec.n_points));
    }
  }

  const fs::path dir(f.out);
  EnsureDir(dir);
  SaveDemos(data.forwards, dir / "forward.jsonl");
  SaveDemos(data.inverses, dir / "inverse.jsonl");
  SavePaired(data.paired, dir / "paired.jsonl");
  if (!aux.empty()) SaveDemos(aux, dir / "aux.jsonl");

  std::string manifest = "{\"format\":\"invskill-manifest\",\"version\":1";
  manifest += ",\"condition\":\"" + std::string(ConditionName(spec.condition)) + "\"";
  manifest += ",\"n_pairs\":" + std::to_string(spec.n_pairs);
  manifest += ",\"n_points\":" + std::to_string(spec.n_points);
  manifest += ",\"amplitude_min\":" + FormatDouble(spec.amplitude_min);
  manifest += ",\"amplitude_max\":" + FormatDouble(spec.amplitude_max);
  manifest += ",\"master_seed\":" + std::to_string(master);
  manifest += ",\"data_seed\":" + std::to_string(spec.seed);
  manifest += ",\"aux\":" + std::to_string(f.aux);
  manifest += ",\"pairing_cost\":" + FormatDouble(data.paired.pairing_cost);
  manifest += "}\n";
  WriteFile(dir / "manifest.json", manifest);

  out << "wrote " << data.forwards.size() << " forward + "
      << data.inverses.size() << " inverse demonstrations ("
      << ConditionName(spec.condition) << ") to " << dir.string() << "\n";
  return kExitOk;
}

// ---- pair -------------------------------------------------------------------

int RunPair(const PairFlags& f, std::ostream& out) {
  const std::vector<Demonstration> forwards = LoadDemos(f.forward);
  const std::vector<Demonstration> inverses = LoadDemos(f.inverse);
  const CostMatrix cost = BuildCostMatrix(forwards, inverses);
  const Assignment assignment = SolveAssignment(cost);
  const PairedDataset paired =
      MakePairedDataset(forwards, inverses, assignment.perm);
  SavePaired(paired, f.out);

  std::string report = "forward_index,inverse_index,cost\n";
  for (size_t i = 0; i < assignment.perm.size(); ++i) {
    report += std::to_string(i) + ',' + std::to_string(assignment.perm[i]) +
              ',' + FormatDouble(paired.pairs[i].cost) + '\n';
  }
  WriteFile(f.report.empty() ? fs::path(f.out + ".costs.csv")
                             : fs::path(f.report),
            report);
  if (!f.cost_matrix.empty()) WriteFile(f.cost_matrix, cost.ToCsv());

  out << "paired " << paired.pairs.size() << " demonstrations\n";
  out << "total_cost " << FormatDouble(paired.pairing_cost) << "\n";
  return kExitOk;
}

// ---- train ------------------------------------------------------------------

int RunTrain(const TrainFlags& f, std::ostream& out) {
  const FileConfig fc = LoadConfig(f.config);
  TrainConfig cfg = fc.train;
  if (f.steps) cfg.steps = *f.steps;
  if (f.batch_size) cfg.batch_size = *f.batch_size;
  if (f.obs_min) cfg.obs_min = *f.obs_min;
  if (f.obs_max) cfg.obs_max = *f.obs_max;
  if (f.n_query) cfg.n_query = *f.n_query;
  if (f.log_every) cfg.log_every = *f.log_every;
  if (f.lr) cfg.lr = *f.lr;
  if (f.weight_decay) cfg.weight_decay = *f.weight_decay;
  if (f.p_aux) cfg.p_aux = *f.p_aux;
  const uint64_t master = ResolveSeed(f.seed, fc.seed);
  try {
    ValidateTrainConfig(cfg);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }

  const PairedDataset paired = LoadPaired(f.paired);
  if (paired.pairs.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "paired file has no pairs");
  }
  AuxiliaryDataset aux;
  if (!f.aux.empty()) aux = MakeAuxiliaryDataset(LoadDemos(f.aux));
  if (aux.demos.empty()) {
    out << "no auxiliary data: p_aux forced to 0\n";
    cfg.p_aux = 0.0;
  }

  ModelArch arch = SynthArch();
  arch.dims.d_y = paired.pairs[0].forward.trajectory.dim();
  arch.dims.d_psi = static_cast<int>(paired.pairs[0].forward.task_param.size());
  if (!aux.demos.empty() &&
      (aux.demos[0].trajectory.dim() != arch.dims.d_y ||
       aux.demos[0].task_param.size() != arch.dims.d_psi)) {
    throw Error(ErrorCode::kDimMismatch,
                "auxiliary data widths differ from the paired data");
  }
  Rng init_rng(DeriveSeed(master, "train", {0}));
  JointModel model = MakeJointModel(arch, init_rng);
  cfg.seed = DeriveSeed(master, "train", {1});
  model.train_config = cfg;
  model.rng_seed = master;
  out << "model parameters: " << model.num_params() << "\n";

  const fs::path dir(f.out);
  EnsureDir(dir);
  StepCallback on_step;
  if (cfg.log_every > 0) {
    on_step = [&](const StepRecord& r, const JointModel& m) {
      if (r.step % cfg.log_every != 0) return;
      out << "step " << r.step << " " << PassKindName(r.kind) << " loss "
          << FormatDouble(r.loss) << "\n";
      if (f.keep_checkpoints) {
        SaveModel(m, dir / ("model_step" + std::to_string(r.step) + ".json"));
      }
    };
  }
  const TrainResult result = Train(std::move(model), paired, aux, cfg, on_step);
  SaveModel(result.model, dir / "model.json");
  WriteFile(dir / "train_log.csv", result.log.ToCsv());
  out << "trained " << cfg.steps << " steps ("
      << result.log.CountKind(PassKind::kAuxiliary) << " auxiliary), checksum "
      << result.log.final_checksum << "\n";
  return kExitOk;
}

// ---- infer ------------------------------------------------------------------

Role RequireRole(const std::string& name, const char* flag) {
  if (name == "forward") return Role::kForward;
  if (name == "inverse") return Role::kInverse;
  throw UsageError(std::string(flag) + " must be 'forward' or 'inverse'");
}

std::vector<double> ParseNumberList(const std::string& text, const char* flag) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw 0;
    } catch (...) {
      throw UsageError(std::string(flag) + ": not a number list: " + text);
    }
  }
  if (values.empty()) throw UsageError(std::string(flag) + " is empty");
  return values;
}

// Observation CSV: optional header row starting with "t", then t,y_1..y_d.
std::vector<ObservationPoint> LoadObservationCsv(const std::string& path) {
  std::istringstream in(ReadFile(path));
  std::vector<ObservationPoint> obs;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line_no == 1 && line.rfind("t", 0) == 0) continue;
    std::vector<double> fields;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        fields.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw Error(ErrorCode::kParseError,
                    "line " + std::to_string(line_no) + ": bad number", line_no);
      }
    }
    if (fields.size() < 2) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_no) + ": need t and values",
                  line_no);
    }
    ObservationPoint p;
    p.t = fields[0];
    p.y = Eigen::Map<const Eigen::VectorXd>(fields.data() + 1,
                                            static_cast<Eigen::Index>(fields.size() - 1));
    obs.push_back(std::move(p));
  }
  return obs;
}

int RunInfer(const InferFlags& f, std::ostream& out) {
  const Role obs_role = RequireRole(f.obs_role, "--obs-role");
  const Role target = RequireRole(f.target, "--target");
  const std::vector<double> psi_values = ParseNumberList(f.psi, "--psi");
  if (f.grid < 2) throw UsageError("--grid must be >= 2");

  const JointModel model = LoadModel(f.ckpt);
  const std::vector<ObservationPoint> obs = LoadObservationCsv(f.obs);
  if (obs.empty()) {
    throw Error(ErrorCode::kEmptyObservation, "observation file is empty");
  }
  const Eigen::VectorXd psi = Eigen::Map<const Eigen::VectorXd>(
      psi_values.data(), static_cast<Eigen::Index>(psi_values.size()));
  const std::vector<double> grid = UniformGrid(f.grid);
  const GeneratedTrajectory gen =
      GenerateTrajectory(model, obs, obs_role, psi, target, grid);
  const std::string csv = GeneratedTrajectoryCsv(gen);
  if (f.out.empty() || f.out == "-") {
    out << csv;
  } else {
    WriteFile(f.out, csv);
  }
  return kExitOk;
}

// ---- eval -------------------------------------------------------------------

int RunEval(const EvalFlags& f, std::ostream& out) {
  if (f.points < 2) throw UsageError("--points must be >= 2");
  if (f.n_obs < 1 || f.n_obs > f.points) {
    throw UsageError("--n-obs must be in [1, points]");
  }
  const JointModel model = LoadModel(f.ckpt);
  const std::vector<double> amplitudes = TestAmplitudes();
  const std::vector<double> mse = Evaluate(model, amplitudes, f.n_obs, f.points);
  std::string csv = "test_amplitude,mse\n";
  double mean = 0.0;
  for (size_t i = 0; i < mse.size(); ++i) {
    csv += FormatDouble(amplitudes[i]) + ',' + FormatDouble(mse[i]) + '\n';
    mean += mse[i];
  }
  mean /= static_cast<double>(mse.size());
  if (!f.out.empty()) WriteFile(f.out, csv);
  out << "mean_mse " << FormatDouble(mean) << "\n";
  return kExitOk;
}

// ---- experiment ---------------------------------------------------------------

std::vector<Condition> ParseConditionList(const std::string& text) {
  if (text == "all") {
    return {std::begin(kAllConditions), std::end(kAllConditions)};
  }
  std::vector<Condition> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const Condition c = RequireCondition(item);
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  if (out.empty()) throw UsageError("--conditions is empty");
  return out;
}

int RunExperimentCmd(const ExperimentFlags& f, std::ostream& out) {
  const FileConfig fc = LoadConfig(f.config);
  ExperimentOptions opt;
  opt.conditions = ParseConditionList(f.conditions);
  if (f.seeds < 1) throw UsageError("--seeds must be >= 1");
  opt.seeds = f.seeds;
  opt.master_seed = ResolveSeed(f.seed, fc.seed);
  opt.train = fc.train;
  if (f.steps) opt.train.steps = *f.steps;
  opt.synth.n_pairs = f.n_pairs.value_or(fc.n_pairs.value_or(20));
  opt.synth.n_points = f.points.value_or(fc.n_points.value_or(200));
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  opt.jobs = f.jobs.value_or(static_cast<int>(hw));
  if (opt.jobs < 1) throw UsageError("--jobs must be >= 1");
  try {
    ValidateTrainConfig(opt.train);
    ValidateSynthSpec(opt.synth);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }

  const fs::path dir(f.out);
  EnsureDir(dir);
  opt.on_cell = [&out](Condition c, int seed, double mean) {
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    out << "cell " << ConditionName(c) << " seed " << seed << " mean_mse "
        << (std::isnan(mean) ? std::string("failed") : FormatDouble(mean))
        << "\n" << std::flush;
  };
  const ExperimentReport report = RunExperiment(opt);
  WriteFile(dir / "report.csv", report.ReportCsv());
  WriteFile(dir / "summary.csv", report.SummaryCsv());

  out << std::left << std::setw(16) << "condition" << std::setw(16)
      << "mean_mse" << std::setw(16) << "std_mse" << "n\n";
  for (const ConditionSummary& s : report.summary) {
    std::ostringstream mean, sd;
    mean << std::scientific << std::setprecision(4) << s.mean_mse;
    sd << std::scientific << std::setprecision(4) << s.std_mse;
    out << std::setw(16) << ConditionName(s.condition) << std::setw(16)
        << mean.str() << std::setw(16) << sd.str() << s.n << "\n";
  }
  if (report.failed_cells > 0) {
    out << report.failed_cells << " cell(s) failed\n";
    return kExitDataError;
  }
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Joint forward/inverse skill learning from demonstrations",
               "invskill"};
  app.require_subcommand(1, 1);

  GenDataFlags gen;
  CLI::App* gen_cmd =
      app.add_subcommand("gen-data", "Generate a synthetic dataset condition");
  gen_cmd->add_option("--condition", gen.condition,
                      "random | paired-noisy | paired-perfect | uniform");
  gen_cmd->add_option("--n", gen.n, "Number of forward/inverse pairs");
  gen_cmd->add_option("--points", gen.points, "Samples per trajectory");
  gen_cmd->add_option("--aux", gen.aux, "Extra forward-only demonstrations");
  gen_cmd->add_option("--seed", gen.seed, "Master seed");
  gen_cmd->add_option("--config", gen.config, "JSON config file");
  gen_cmd->add_option("--out", gen.out, "Output directory")->required();

  PairFlags pair;
  CLI::App* pair_cmd =
      app.add_subcommand("pair", "Match forward and inverse demonstrations");
  pair_cmd->add_option("--forward", pair.forward, "Forward demo file")->required();
  pair_cmd->add_option("--inverse", pair.inverse, "Inverse demo file")->required();
  pair_cmd->add_option("--out", pair.out, "Paired dataset file")->required();
  pair_cmd->add_option("--report", pair.report,
                       "Per-pair cost CSV (default: <out>.costs.csv)");
  pair_cmd->add_option("--cost-matrix", pair.cost_matrix,
                       "Also dump the full cost matrix as CSV");

  TrainFlags train;
  CLI::App* train_cmd = app.add_subcommand("train", "Train the joint model");
  train_cmd->add_option("--paired", train.paired, "Paired dataset file")->required();
  train_cmd->add_option("--aux", train.aux, "Auxiliary forward demo file");
  train_cmd->add_option("--config", train.config, "JSON config file");
  train_cmd->add_option("--out", train.out, "Output directory")->required();
  train_cmd->add_option("--seed", train.seed, "Master seed");
  train_cmd->add_option("--steps", train.steps);
  train_cmd->add_option("--lr", train.lr);
  train_cmd->add_option("--weight-decay", train.weight_decay);
  train_cmd->add_option("--batch-size", train.batch_size);
  train_cmd->add_option("--p-aux", train.p_aux);
  train_cmd->add_option("--obs-min", train.obs_min);
  train_cmd->add_option("--obs-max", train.obs_max);
  train_cmd->add_option("--n-query", train.n_query);
  train_cmd->add_option("--log-every", train.log_every);
  train_cmd->add_flag("--keep-checkpoints", train.keep_checkpoints,
                      "Save a checkpoint every --log-every steps");

  InferFlags infer;
  CLI::App* infer_cmd =
      app.add_subcommand("infer", "Generate a trajectory from observations");
  infer_cmd->add_option("--ckpt", infer.ckpt, "Model checkpoint")->required();
  infer_cmd->add_option("--obs", infer.obs, "Observation CSV (t,y_1..)")->required();
  infer_cmd->add_option("--obs-role", infer.obs_role, "forward | inverse");
  infer_cmd->add_option("--psi", infer.psi, "Task parameter, comma separated")
      ->required();
  infer_cmd->add_option("--target", infer.target, "forward | inverse");
  infer_cmd->add_option("--grid", infer.grid, "Number of query times");
  infer_cmd->add_option("--out", infer.out, "Output CSV (default: stdout)");

  EvalFlags eval;
  CLI::App* eval_cmd = app.add_subcommand(
      "eval", "Inverse-trajectory MSE on the synthetic test amplitudes");
  eval_cmd->add_option("--ckpt", eval.ckpt, "Model checkpoint")->required();
  eval_cmd->add_option("--n-obs", eval.n_obs, "Forward observations");
  eval_cmd->add_option("--points", eval.points, "Trajectory samples");
  eval_cmd->add_option("--out", eval.out, "Per-amplitude CSV");

  ExperimentFlags exp;
  CLI::App* exp_cmd =
      app.add_subcommand("experiment", "Run the synthetic benchmark");
  exp_cmd->add_option("--conditions", exp.conditions,
                      "'all' or a comma-separated list");
  exp_cmd->add_option("--seeds", exp.seeds, "Runs per condition");
  exp_cmd->add_option("--config", exp.config, "JSON config file");
  exp_cmd->add_option("--out", exp.out, "Output directory")->required();
  exp_cmd->add_option("--seed", exp.seed, "Master seed");
  exp_cmd->add_option("--jobs", exp.jobs, "Worker threads");
  exp_cmd->add_option("--steps", exp.steps, "Training steps per cell");
  exp_cmd->add_option("--n-pairs", exp.n_pairs, "Pairs per dataset");
  exp_cmd->add_option("--points", exp.points, "Samples per trajectory");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_cmd) return RunGenData(gen, *gen_cmd, out);
    if (*pair_cmd) return RunPair(pair, out);
    if (*train_cmd) return RunTrain(train, out);
    if (*infer_cmd) return RunInfer(infer, out);
    if (*eval_cmd) return RunEval(eval, out);
    if (*exp_cmd) return RunExperimentCmd(exp, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kExitDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDataError;
  }
  return kExitUsage;
}

}  // namespace invskill
