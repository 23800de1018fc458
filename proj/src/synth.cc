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

#include "invskill/synth.h"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "invskill/assign.h"
#include "invskill/errors.h"
#include "invskill/train.h"

namespace invskill {

std::string_view ConditionName(Condition c) {
  switch (c) {
    case Condition::kRandom: return "random";
    case Condition::kPairedNoisy: return "paired-noisy";
    case Condition::kPairedPerfect: return "paired-perfect";
    case Condition::kUniform: return "uniform";
  }
  return "unknown";
}

std::optional<Condition> ParseCondition(std::string_view name) {
  for (Condition c : kAllConditions) {
    if (ConditionName(c) == name) return c;
  }
  return std::nullopt;
}

void ValidateSynthSpec(const SynthSpec& spec) {
  if (spec.n_pairs < 1) {
    throw Error(ErrorCode::kInvalidConfig, "n_pairs must be >= 1");
  }
  if (spec.n_points < 2) {
    throw Error(ErrorCode::kInvalidConfig, "n_points must be >= 2");
  }
  if (spec.amplitude_min != kAmplitudeMin ||
      spec.amplitude_max != kAmplitudeMax) {
    throw Error(ErrorCode::kInvalidConfig,
                "amplitude range is fixed to [0.1, 0.25]");
  }
}

double ForwardValue(double psi, double t) {
  return psi * std::sin(1.5 * std::numbers::pi * t) + t;
}

Trajectory ForwardTrajectory(double psi, int n_points) {
  Trajectory traj;
  traj.times = UniformGrid(n_points);
  traj.values.resize(n_points, 1);
  for (int k = 0; k < n_points; ++k) {
    traj.values(k, 0) = ForwardValue(psi, traj.times[k]);
  }
  return traj;
}

Trajectory InverseTrajectory(double psi, int n_points) {
  Trajectory fwd = ForwardTrajectory(psi, n_points);
  Trajectory inv;
  inv.times = std::move(fwd.times);
  inv.values = fwd.values.colwise().reverse();
  return inv;
}

namespace {

Eigen::VectorXd Scalar(double x) { return Eigen::VectorXd::Constant(1, x); }

}  // namespace

Demonstration ForwardDemo(double psi, int n_points) {
  Demonstration d;
  d.trajectory = ForwardTrajectory(psi, n_points);
  d.task_param = Scalar(psi);
  d.s_init = d.trajectory.values.row(0).transpose();
  d.s_final = d.trajectory.values.row(n_points - 1).transpose();
  d.role = Role::kForward;
  return d;
}

Demonstration InverseDemo(double psi, int n_points) {
  Demonstration d;
  d.trajectory = InverseTrajectory(psi, n_points);
  d.task_param = Scalar(psi);
  d.s_init = d.trajectory.values.row(0).transpose();
  d.s_final = d.trajectory.values.row(n_points - 1).transpose();
  d.role = Role::kInverse;
  return d;
}

std::vector<double> EvenlySpaced(double lo, double hi, int n) {
  if (n < 1) throw Error(ErrorCode::kInvalidConfig, "need at least one value");
  if (n == 1) return {lo};
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    out[i] = std::lerp(lo, hi, static_cast<double>(i) / (n - 1));
  }
  return out;
}

std::vector<double> TestAmplitudes() { return EvenlySpaced(0.105, 0.245, 20); }

ConditionData MakeConditionDatasets(const SynthSpec& spec) {
  ValidateSynthSpec(spec);
  Rng rng(spec.seed);
  const int n = spec.n_pairs;
  std::vector<double> fwd_psi(n), inv_psi(n);
  if (spec.condition == Condition::kUniform) {
    fwd_psi = EvenlySpaced(spec.amplitude_min, spec.amplitude_max, n);
    inv_psi = fwd_psi;
  } else {
    for (double& a : fwd_psi) a = rng.Uniform(spec.amplitude_min, spec.amplitude_max);
    if (spec.condition == Condition::kPairedPerfect) {
      const std::vector<size_t> order = rng.Permutation(n);
      for (int i = 0; i < n; ++i) inv_psi[i] = fwd_psi[order[i]];
    } else {
      for (double& a : inv_psi) {
        a = rng.Uniform(spec.amplitude_min, spec.amplitude_max);
      }
    }
  }

  ConditionData data;
  for (int i = 0; i < n; ++i) {
    data.forwards.push_back(ForwardDemo(fwd_psi[i], spec.n_points));
    data.inverses.push_back(InverseDemo(inv_psi[i], spec.n_points));
  }
  if (spec.condition == Condition::kRandom) {
    const std::vector<size_t> order = rng.Permutation(n);
    const std::vector<int> perm(order.begin(), order.end());
    data.paired = MakePairedDataset(data.forwards, data.inverses, perm);
  } else {
    data.paired = PairDemonstrations(data.forwards, data.inverses);
  }
  return data;
}

double MeanSquaredError(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.size() == 0) {
    throw Error(ErrorCode::kDimMismatch, "MSE operands differ in shape");
  }
  return (a - b).squaredNorm() / static_cast<double>(a.size());
}

std::vector<double> Evaluate(const JointModel& model,
                             const std::vector<double>& test_amplitudes,
                             int n_obs, int n_points) {
  if (n_obs < 1 || n_obs > n_points) {
    throw Error(ErrorCode::kInvalidConfig, "n_obs must be in [1, n_points]");
  }
  const std::vector<double> grid = UniformGrid(n_points);
  std::vector<double> mse;
  mse.reserve(test_amplitudes.size());
  for (double psi : test_amplitudes) {
    const Trajectory fwd = ForwardTrajectory(psi, n_points);
    std::vector<ObservationPoint> obs;
    for (int k = 0; k < n_obs; ++k) {
      const int idx =
          n_obs == 1 ? 0 : (k * (n_points - 1) + (n_obs - 1) / 2) / (n_obs - 1);
      obs.push_back({fwd.times[idx], fwd.values.row(idx).transpose()});
    }
    const GeneratedTrajectory gen =
        GenerateTrajectory(model, obs, Role::kForward, Scalar(psi),
                           Role::kInverse, grid);
    mse.push_back(
        MeanSquaredError(gen.mean, InverseTrajectory(psi, n_points).values));
  }
  return mse;
}

ModelArch SynthArch() {
  ModelArch arch;
  arch.dims = {1, 1, 128, 16};
  return arch;
}

// ---- Experiment -----------------------------------------------------------

std::string ExperimentReport::ReportCsv() const {
  std::string out = "condition,seed,test_amplitude,mse\n";
  for (const ExperimentRow& r : rows) {
    out += ConditionName(r.condition);
    out += ',' + std::to_string(r.seed_index) + ',' + FormatDouble(r.amplitude);
    out += ',';
    out += r.failed ? std::string("failed") : FormatDouble(r.mse);
    out += '\n';
  }
  return out;
}

std::string ExperimentReport::SummaryCsv() const {
  std::string out = "condition,mean_mse,std_mse,n\n";
  for (const ConditionSummary& s : summary) {
    out += ConditionName(s.condition);
    out += ',';
    out += s.n > 0 ? FormatDouble(s.mean_mse) : std::string("nan");
    out += ',';
    out += s.n > 1 ? FormatDouble(s.std_mse) : std::string("nan");
    out += ',' + std::to_string(s.n) + '\n';
  }
  return out;
}

const ConditionSummary* ExperimentReport::Find(Condition c) const {
  for (const ConditionSummary& s : summary) {
    if (s.condition == c) return &s;
  }
  return nullptr;
}

uint64_t CellSeed(uint64_t master, int condition_index, int seed_index) {
  return DeriveSeed(master, "experiment",
                    {static_cast<uint64_t>(condition_index),
                     static_cast<uint64_t>(seed_index)});
}

std::vector<double> RunCell(Condition condition, uint64_t cell_seed,
                            const ExperimentOptions& options) {
  SynthSpec spec = options.synth;
  spec.condition = condition;
  spec.seed = DeriveSeed(cell_seed, "data");
  const ConditionData data = MakeConditionDatasets(spec);

  Rng init_rng(DeriveSeed(cell_seed, "init"));
  JointModel model = MakeJointModel(SynthArch(), init_rng);
  TrainConfig cfg = options.train;
  cfg.seed = DeriveSeed(cell_seed, "train");
  model.train_config = cfg;
  model.rng_seed = cell_seed;
  TrainResult trained = Train(std::move(model), data.paired, {}, cfg);
  return Evaluate(trained.model, TestAmplitudes(), kEvalObservations,
                  spec.n_points);
}

namespace {

int ConditionIndex(Condition c) {
  for (int i = 0; i < 4; ++i) {
    if (kAllConditions[i] == c) return i;
  }
  return -1;
}

}  // namespace

ExperimentReport RunExperiment(const ExperimentOptions& options) {
  if (options.seeds < 1) {
    throw Error(ErrorCode::kInvalidConfig, "seeds must be >= 1");
  }
  if (options.conditions.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "no conditions selected");
  }
  ValidateTrainConfig(options.train);
  ValidateSynthSpec(options.synth);

  struct Cell {
    Condition condition;
    int seed_index;
    std::vector<double> mse;
    bool failed = false;
  };
  std::vector<Cell> cells;
  for (Condition c : options.conditions) {
    for (int s = 0; s < options.seeds; ++s) cells.push_back({c, s, {}, false});
  }

  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t i = next++; i < cells.size(); i = next++) {
      Cell& cell = cells[i];
      try {
        const uint64_t seed = CellSeed(
            options.master_seed, ConditionIndex(cell.condition), cell.seed_index);
        cell.mse = RunCell(cell.condition, seed, options);
      } catch (const std::exception&) {
        cell.failed = true;
      }
      if (options.on_cell) {
        double mean = std::numeric_limits<double>::quiet_NaN();
        if (!cell.failed && !cell.mse.empty()) {
          mean = 0.0;
          for (double m : cell.mse) mean += m;
          mean /= static_cast<double>(cell.mse.size());
        }
        options.on_cell(cell.condition, cell.seed_index, mean);
      }
    }
  };
  const int jobs =
      std::max(1, std::min<int>(options.jobs, static_cast<int>(cells.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  ExperimentReport report;
  const std::vector<double> amplitudes = TestAmplitudes();
  for (const Cell& cell : cells) {
    if (cell.failed) ++report.failed_cells;
    for (size_t a = 0; a < amplitudes.size(); ++a) {
      report.rows.push_back({cell.condition, cell.seed_index, amplitudes[a],
                             cell.failed ? 0.0 : cell.mse[a], cell.failed});
    }
  }
  for (Condition c : options.conditions) {
    ConditionSummary s{c, 0.0, 0.0, 0};
    for (const ExperimentRow& r : report.rows) {
      if (r.condition != c || r.failed) continue;
      s.mean_mse += r.mse;
      ++s.n;
    }
    if (s.n > 0) s.mean_mse /= s.n;
    double ss = 0.0;
    for (const ExperimentRow& r : report.rows) {
      if (r.condition != c || r.failed) continue;
      ss += (r.mse - s.mean_mse) * (r.mse - s.mean_mse);
    }
    s.std_mse = s.n > 1 ? std::sqrt(ss / (s.n - 1)) : 0.0;
    report.summary.push_back(s);
  }
  return report;
}

}  // namespace invskill
