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

#ifndef INVSKILL_SYNTH_H_
#define INVSKILL_SYNTH_H_

// Synthetic forward/inverse benchmark.
//
// Forward trajectory: tau_F(t) = psi * sin(3 pi t / 2) + t on [0, 1], with
// amplitude psi in [0.1, 0.25]. The inverse task is its time reversal,
// tau_I(t) = tau_F(1 - t). Environment states are the trajectory endpoints.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "invskill/core.h"
#include "invskill/model.h"
#include "invskill/rng.h"

namespace invskill {

inline constexpr double kAmplitudeMin = 0.1;
inline constexpr double kAmplitudeMax = 0.25;

enum class Condition { kRandom, kPairedNoisy, kPairedPerfect, kUniform };

inline constexpr Condition kAllConditions[] = {
    Condition::kRandom, Condition::kPairedNoisy, Condition::kPairedPerfect,
    Condition::kUniform};

// "random", "paired-noisy", "paired-perfect", "uniform".
std::string_view ConditionName(Condition c);
std::optional<Condition> ParseCondition(std::string_view name);

struct SynthSpec {
  double amplitude_min = kAmplitudeMin;
  double amplitude_max = kAmplitudeMax;
  int n_pairs = 20;
  int n_points = 200;
  Condition condition = Condition::kUniform;
  uint64_t seed = 0;
};

// Throws kInvalidConfig unless n_pairs >= 1, n_points >= 2 and the amplitude
// bounds are the benchmark's.
void ValidateSynthSpec(const SynthSpec& spec);

double ForwardValue(double psi, double t);

// Samples on k / (n_points - 1), k = 0..n_points-1.
Trajectory ForwardTrajectory(double psi, int n_points);
// Reversed forward samples, so tau_I[k] == tau_F[n_points - 1 - k] exactly.
Trajectory InverseTrajectory(double psi, int n_points);

// Demonstrations with psi as task parameter and the trajectory endpoints as
// s_init / s_final.
Demonstration ForwardDemo(double psi, int n_points);
Demonstration InverseDemo(double psi, int n_points);

struct ConditionData {
  std::vector<Demonstration> forwards;
  std::vector<Demonstration> inverses;
  PairedDataset paired;
};

// Random / PairedNoisy share independent U[min, max] draws for forward and
// inverse amplitudes; Random pairs them by a random permutation, PairedNoisy
// by the assignment solver. PairedPerfect reuses the forward amplitudes for
// the inverses (shuffled, then matched). Uniform spaces amplitudes evenly
// over [min, max] with perfect correspondence.
ConditionData MakeConditionDatasets(const SynthSpec& spec);

// Amplitudes evenly spaced over [lo, hi], endpoints included.
std::vector<double> EvenlySpaced(double lo, double hi, int n);

// The shared evaluation grid: 20 amplitudes over [0.105, 0.245].
std::vector<double> TestAmplitudes();

inline constexpr int kEvalObservations = 10;

double MeanSquaredError(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

// For each amplitude: conditions on n_obs evenly spaced samples of the
// forward trajectory, generates the inverse on the n_points grid and returns
// its MSE against the true inverse trajectory.
std::vector<double> Evaluate(const JointModel& model,
                             const std::vector<double>& test_amplitudes,
                             int n_obs = kEvalObservations,
                             int n_points = 200);

// Architecture used by the benchmark (d_y = d_psi = 1).
ModelArch SynthArch();

struct ExperimentRow {
  Condition condition;
  int seed_index = 0;
  double amplitude = 0.0;
  double mse = 0.0;
  bool failed = false;
};

struct ConditionSummary {
  Condition condition;
  double mean_mse = 0.0;
  double std_mse = 0.0;  // sample standard deviation
  int n = 0;
};

struct ExperimentReport {
  std::vector<ExperimentRow> rows;
  std::vector<ConditionSummary> summary;
  int failed_cells = 0;

  // condition,seed,test_amplitude,mse. Failed cells carry "failed" as mse.
  std::string ReportCsv() const;
  // condition,mean_mse,std_mse,n
  std::string SummaryCsv() const;
  const ConditionSummary* Find(Condition c) const;
};

struct ExperimentOptions {
  std::vector<Condition> conditions{std::begin(kAllConditions),
                                    std::end(kAllConditions)};
  int seeds = 5;
  uint64_t master_seed = 0;
  TrainConfig train;  // seed is replaced per cell
  SynthSpec synth;    // condition and seed are replaced per cell
  int jobs = 1;
  // Called from worker threads after each finished cell.
  std::function<void(Condition, int seed_index, double cell_mean)> on_cell;
};

// Seed of cell (condition index, seed index) and the derived data / model /
// training streams.
uint64_t CellSeed(uint64_t master, int condition_index, int seed_index);

// Trains and evaluates one (condition, seed) cell.
std::vector<double> RunCell(Condition condition, uint64_t cell_seed,
                            const ExperimentOptions& options);

ExperimentReport RunExperiment(const ExperimentOptions& options);

}  // namespace invskill

#endif  // INVSKILL_SYNTH_H_
