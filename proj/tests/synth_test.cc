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

#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "invskill/assign.h"
#include "invskill/errors.h"
#include "invskill/train.h"

namespace invskill {
namespace {

std::vector<double> Amplitudes(const std::vector<Demonstration>& demos) {
  std::vector<double> out;
  for (const Demonstration& d : demos) out.push_back(d.task_param[0]);
  return out;
}

TEST(ForwardValue, ClosedForm) {
  for (double psi : {0.1, 0.17, 0.25}) EXPECT_EQ(ForwardValue(psi, 0.0), 0.0);
  EXPECT_NEAR(ForwardValue(0.2, 1.0), 0.8, 1e-15);
  EXPECT_NEAR(ForwardValue(0.2, 1.0 / 3.0), 0.2 + 1.0 / 3.0, 1e-15);
  const double t = 0.37;
  EXPECT_NEAR(ForwardValue(0.13, t), 0.13 * std::sin(1.5 * std::numbers::pi * t) + t,
              1e-15);
}

TEST(Trajectories, TimeReversalIsExact) {
  for (double psi : {0.1, 0.15, 0.2234, 0.25}) {
    for (int n : {2, 3, 50, 200}) {
      const Trajectory f = ForwardTrajectory(psi, n);
      const Trajectory i = InverseTrajectory(psi, n);
      ASSERT_EQ(f.times, i.times);
      for (int k = 0; k < n; ++k) ASSERT_EQ(i.values(k, 0), f.values(n - 1 - k, 0));
    }
  }
  const Trajectory i = InverseTrajectory(0.15, 200);
  EXPECT_NEAR(i.values(0, 0), 0.85, 1e-15);
  EXPECT_EQ(i.values(199, 0), 0.0);
}

TEST(Trajectories, GridAndDemoStates) {
  const Trajectory f = ForwardTrajectory(0.2, 5);
  EXPECT_EQ(f.times, (std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}));
  const Demonstration fd = ForwardDemo(0.2, 200);
  const Demonstration id = InverseDemo(0.2, 200);
  EXPECT_EQ(fd.role, Role::kForward);
  EXPECT_EQ(id.role, Role::kInverse);
  EXPECT_EQ(fd.s_init[0], 0.0);
  EXPECT_EQ(fd.s_final[0], fd.trajectory.values(199, 0));
  EXPECT_EQ(id.s_init[0], fd.s_final[0]);
  EXPECT_EQ(id.s_final[0], fd.s_init[0]);
  EXPECT_NO_THROW(ValidateDemonstration(fd));
  EXPECT_NO_THROW(ValidateDemonstration(id));
}

TEST(EvenlySpaced, EndpointsInclusive) {
  const std::vector<double> a = EvenlySpaced(0.1, 0.25, 4);
  ASSERT_EQ(a.size(), 4u);
  EXPECT_EQ(a[0], 0.1);
  EXPECT_NEAR(a[1], 0.15, 1e-15);
  EXPECT_NEAR(a[2], 0.2, 1e-15);
  EXPECT_EQ(a[3], 0.25);
  const std::vector<double> t = TestAmplitudes();
  ASSERT_EQ(t.size(), 20u);
  EXPECT_EQ(t.front(), 0.105);
  EXPECT_EQ(t.back(), 0.245);
}

SynthSpec Spec(Condition c, uint64_t seed, int n = 20) {
  SynthSpec s;
  s.condition = c;
  s.seed = seed;
  s.n_pairs = n;
  return s;
}

TEST(MakeConditionDatasets, UniformFour) {
  const ConditionData d = MakeConditionDatasets(Spec(Condition::kUniform, 1, 4));
  ASSERT_EQ(d.paired.pairs.size(), 4u);
  const std::vector<double> amps = Amplitudes(d.forwards);
  EXPECT_EQ(amps[0], 0.1);
  EXPECT_NEAR(amps[1], 0.15, 1e-15);
  EXPECT_NEAR(amps[2], 0.2, 1e-15);
  EXPECT_EQ(amps[3], 0.25);
  for (const DemoPair& p : d.paired.pairs) {
    EXPECT_EQ(p.forward.task_param, p.inverse.task_param);
    EXPECT_EQ(p.forward.s_final, p.inverse.s_init);
  }
  EXPECT_EQ(d.paired.pairing_cost, 0.0);
}

TEST(MakeConditionDatasets, PairedPerfectStatesMatch) {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const ConditionData d = MakeConditionDatasets(Spec(Condition::kPairedPerfect, seed));
    EXPECT_LE(d.paired.pairing_cost, 1e-9);
    for (const DemoPair& p : d.paired.pairs) {
      EXPECT_EQ(p.forward.s_final, p.inverse.s_init);
      EXPECT_EQ(p.forward.task_param, p.inverse.task_param);
    }
    auto f = Amplitudes(d.forwards), i = Amplitudes(d.inverses);
    std::sort(f.begin(), f.end());
    std::sort(i.begin(), i.end());
    EXPECT_EQ(f, i);
  }
}

TEST(MakeConditionDatasets, RandomAndNoisyShareDraws) {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const ConditionData r = MakeConditionDatasets(Spec(Condition::kRandom, seed));
    const ConditionData n = MakeConditionDatasets(Spec(Condition::kPairedNoisy, seed));
    EXPECT_EQ(Amplitudes(r.forwards), Amplitudes(n.forwards));
    EXPECT_EQ(Amplitudes(r.inverses), Amplitudes(n.inverses));
    EXPECT_GE(r.paired.pairing_cost, n.paired.pairing_cost);
    EXPECT_EQ(n.paired.pairing_cost,
              SolveAssignment(BuildCostMatrix(n.forwards, n.inverses)).total_cost);
    for (double a : Amplitudes(r.forwards)) {
      EXPECT_GE(a, kAmplitudeMin);
      EXPECT_LE(a, kAmplitudeMax);
    }
  }
}

TEST(MakeConditionDatasets, DeterministicPerSeed) {
  const ConditionData a = MakeConditionDatasets(Spec(Condition::kPairedNoisy, 5));
  const ConditionData b = MakeConditionDatasets(Spec(Condition::kPairedNoisy, 5));
  const ConditionData c = MakeConditionDatasets(Spec(Condition::kPairedNoisy, 6));
  EXPECT_EQ(Amplitudes(a.forwards), Amplitudes(b.forwards));
  EXPECT_NE(Amplitudes(a.forwards), Amplitudes(c.forwards));
}

TEST(ValidateSynthSpec, Rejects) {
  SynthSpec s;
  s.n_pairs = 0;
  EXPECT_THROW(ValidateSynthSpec(s), Error);
  s = SynthSpec{};
  s.n_points = 1;
  EXPECT_THROW(ValidateSynthSpec(s), Error);
  s = SynthSpec{};
  s.amplitude_max = 0.3;
  EXPECT_THROW(ValidateSynthSpec(s), Error);
}

TEST(Conditions, NamesRoundTrip) {
  for (Condition c : kAllConditions) EXPECT_EQ(ParseCondition(ConditionName(c)), c);
  EXPECT_FALSE(ParseCondition("bogus").has_value());
}

TEST(MeanSquaredError, Identity) {
  const Trajectory i = InverseTrajectory(0.2, 200);
  EXPECT_EQ(MeanSquaredError(i.values, i.values), 0.0);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(4, 1), b = Eigen::MatrixXd::Ones(4, 1);
  b(0, 0) = 3.0;
  EXPECT_EQ(MeanSquaredError(a, b), (9.0 + 3.0) / 4.0);
}

TEST(Evaluate, TrainedBeatsUntrained) {
  ExperimentOptions opt;
  opt.train.steps = 1500;
  Rng init(1);
  const JointModel untrained = MakeJointModel(SynthArch(), init);
  const ConditionData data = MakeConditionDatasets(Spec(Condition::kUniform, 2));
  TrainConfig cfg = opt.train;
  cfg.seed = 3;
  const TrainResult trained = Train(untrained, data.paired, {}, cfg);
  const std::vector<double> amps = TestAmplitudes();
  auto mean = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / v.size();
  };
  const std::vector<double> before = Evaluate(untrained, amps);
  const std::vector<double> after = Evaluate(trained.model, amps);
  ASSERT_EQ(after.size(), 20u);
  EXPECT_GT(mean(before), mean(after));
}

TEST(RunExperiment, BookkeepingAndDeterminism) {
  ExperimentOptions opt;
  opt.conditions = {Condition::kRandom, Condition::kUniform};
  opt.seeds = 2;
  opt.train.steps = 20;
  opt.master_seed = 4;
  const ExperimentReport a = RunExperiment(opt);
  EXPECT_EQ(a.rows.size(), 2u * 2 * 20);
  EXPECT_EQ(a.failed_cells, 0);
  ASSERT_EQ(a.summary.size(), 2u);
  EXPECT_EQ(a.summary[0].n, 40);
  opt.jobs = 2;
  const ExperimentReport b = RunExperiment(opt);
  EXPECT_EQ(a.ReportCsv(), b.ReportCsv());
  EXPECT_EQ(a.SummaryCsv(), b.SummaryCsv());
  const std::string csv = a.ReportCsv();
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 81);
}

TEST(RunExperiment, CellsAreIndependentOfSelection) {
  ExperimentOptions opt;
  opt.seeds = 1;
  opt.train.steps = 10;
  opt.master_seed = 5;
  opt.conditions = {Condition::kUniform};
  const ExperimentReport only = RunExperiment(opt);
  opt.conditions = {Condition::kRandom, Condition::kUniform};
  const ExperimentReport both = RunExperiment(opt);
  EXPECT_EQ(only.Find(Condition::kUniform)->mean_mse,
            both.Find(Condition::kUniform)->mean_mse);
}

TEST(RunExperiment, FailedCellsAreMarked) {
  ExperimentOptions opt;
  opt.conditions = {Condition::kUniform};
  opt.seeds = 2;
  opt.train.steps = 5;
  opt.synth.n_points = 10;  // shorter than obs_max, so training throws
  const ExperimentReport r = RunExperiment(opt);
  EXPECT_EQ(r.failed_cells, 2);
  EXPECT_NE(r.ReportCsv().find("failed"), std::string::npos);
}

}  // namespace
}  // namespace invskill
