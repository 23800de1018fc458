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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Pass criterion names (A1 .. A6) as
// arguments to run a subset.
//
// INVSKILL_A1_STEPS overrides the training length of A1 (default 60000).

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <functional>
#include <iostream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <sys/wait.h>

#include "invskill/assign.h"
#include "invskill/core.h"
#include "invskill/model.h"
#include "invskill/rng.h"
#include "invskill/synth.h"
#include "invskill/train.h"
#include "oracle.h"
#include "test_util.h"

namespace invskill {
namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string Sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", x);
  return buf;
}

// ---- A1 ---------------------------------------------------------------------

Verdict ConditionOrdering() {
  int steps = 60000;
  if (const char* env = std::getenv("INVSKILL_A1_STEPS")) steps = std::atoi(env);
  ExperimentOptions opt;
  opt.seeds = 3;
  opt.master_seed = 0;
  opt.train.steps = steps;
  opt.synth.n_pairs = 20;
  opt.jobs = std::max(1u, std::thread::hardware_concurrency());
  opt.on_cell = [](Condition c, int seed, double mean) {
    std::cerr << "  A1 cell " << ConditionName(c) << " seed " << seed << " mean_mse "
              << Sci(mean) << std::endl;
  };
  const auto t0 = std::chrono::steady_clock::now();
  const ExperimentReport r = RunExperiment(opt);
  const double minutes =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / 60.0;
  if (r.failed_cells > 0) {
    return {false, std::to_string(r.failed_cells) + " cell(s) failed"};
  }
  const double random = r.Find(Condition::kRandom)->mean_mse;
  const double noisy = r.Find(Condition::kPairedNoisy)->mean_mse;
  const double perfect = r.Find(Condition::kPairedPerfect)->mean_mse;
  const double uniform = r.Find(Condition::kUniform)->mean_mse;
  const bool c1 = random > 2.0 * noisy;
  const bool c2 = noisy > 2.0 * perfect;
  const bool c3 = uniform <= perfect;
  std::ostringstream d;
  d << "steps=" << steps << " seeds=3 pairs=20; mean MSE random=" << Sci(random)
    << " paired-noisy=" << Sci(noisy) << " paired-perfect=" << Sci(perfect)
    << " uniform=" << Sci(uniform) << "; random>2*noisy " << (c1 ? "yes" : "NO")
    << " (x" << Sci(random / noisy) << "), noisy>2*perfect " << (c2 ? "yes" : "NO")
    << " (x" << Sci(noisy / perfect) << "), uniform<=perfect " << (c3 ? "yes" : "NO")
    << "; " << Sci(minutes) << " min";
  return {c1 && c2 && c3, d.str()};
}

// ---- A2 ---------------------------------------------------------------------

Verdict AssignmentOracle() {
  Rng rng(2);
  int checked = 0, mismatched = 0;
  for (int n = 2; n <= 7; ++n) {
    for (int trial = 0; trial < 200; ++trial) {
      Eigen::MatrixXd c(n, n);
      for (Eigen::Index i = 0; i < c.size(); ++i) c.data()[i] = rng.Uniform();
      std::vector<int> p(n);
      std::iota(p.begin(), p.end(), 0);
      double best = std::numeric_limits<double>::infinity();
      do {
        double total = 0.0;
        for (int i = 0; i < n; ++i) total += c(i, p[i]);
        best = std::min(best, total);
      } while (std::next_permutation(p.begin(), p.end()));
      ++checked;
      if (SolveAssignment(c).total_cost != best) ++mismatched;
    }
  }
  return {mismatched == 0, std::to_string(checked) + " matrices (sizes 2..7), " +
                               std::to_string(mismatched) + " differ from brute force"};
}

// ---- A3 ---------------------------------------------------------------------

Verdict GradientFidelity() {
  oracle::GradCheckStats stats;
  for (uint64_t config = 0; config < 100; ++config) {
    testing::PairedGradCheck(DeriveSeed(3, "grad-check", {config}), 1e-5, 1e-4, stats);
  }
  std::ostringstream d;
  d << "100 configs, " << stats.checked << " parameters checked, " << stats.failed
    << " over 1e-4, worst relative error " << Sci(stats.worst_rel_error) << ", "
    << stats.kink_skipped << " skipped (perturbation crosses a ReLU kink)";
  return {stats.failed == 0 && stats.checked > 0, d.str()};
}

// ---- A4 ---------------------------------------------------------------------

Verdict FreezeContract() {
  SynthSpec spec;
  spec.condition = Condition::kPairedNoisy;
  spec.seed = 4;
  const ConditionData data = MakeConditionDatasets(spec);
  AuxiliaryDataset aux;
  Rng aux_rng(5);
  for (int i = 0; i < 20; ++i) {
    aux.demos.push_back(ForwardDemo(aux_rng.Uniform(kAmplitudeMin, kAmplitudeMax), 200));
  }
  Rng init(6);
  JointModel model = MakeJointModel(SynthArch(), init);
  TrainConfig cfg;
  cfg.steps = 1000;
  cfg.p_aux = 0.5;
  cfg.seed = 7;

  uint64_t ei = ParamChecksum(model.enc_inverse);
  uint64_t di = ParamChecksum(model.dec_inverse);
  int aux_changed = 0, paired_unchanged = 0;
  const TrainResult r = Train(model, data.paired, aux, cfg,
                              [&](const StepRecord& rec, const JointModel& m) {
                                const uint64_t ei2 = ParamChecksum(m.enc_inverse);
                                const uint64_t di2 = ParamChecksum(m.dec_inverse);
                                const bool changed = ei2 != ei || di2 != di;
                                if (rec.kind == PassKind::kAuxiliary && changed) ++aux_changed;
                                if (rec.kind == PassKind::kPaired && !changed) ++paired_unchanged;
                                ei = ei2;
                                di = di2;
                              });
  const int n_aux = r.log.CountKind(PassKind::kAuxiliary);
  const double frac = n_aux / 1000.0;
  const bool frac_ok = std::abs(frac - 0.5) <= 0.05;
  std::ostringstream d;
  d << n_aux << "/1000 auxiliary steps (fraction " << frac << "), E_I/D_I changed on "
    << aux_changed << " auxiliary steps, unchanged on " << paired_unchanged
    << " paired steps";
  return {aux_changed == 0 && frac_ok, d.str()};
}

// ---- A5 ---------------------------------------------------------------------

bool BitEqual(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) == 0;
}

Verdict StructuralInvariants() {
  std::vector<std::string> failures;
  Rng rng(8);
  const JointModel model = MakeJointModel(SynthArch(), rng);

  int perm_bad = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = static_cast<int>(rng.UniformInt(1, 15));
    std::vector<ObservationPoint> obs;
    for (int i = 0; i < n; ++i) {
      obs.push_back({rng.Uniform(), testing::RandomVector(rng, 1)});
    }
    std::vector<ObservationPoint> shuffled;
    for (size_t k : rng.Permutation(obs.size())) shuffled.push_back(obs[k]);
    const MlpBlock& enc = trial % 2 == 0 ? model.enc_forward : model.enc_inverse;
    if (!BitEqual(Encode(enc, obs), Encode(enc, shuffled))) ++perm_bad;
  }
  if (perm_bad > 0) failures.push_back("permutation invariance x" + std::to_string(perm_bad));

  int blend_bad = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const Eigen::VectorXd f = testing::RandomVector(rng, 128, -10, 10);
    const Eigen::VectorXd i = testing::RandomVector(rng, 128, -10, 10);
    if (!BitEqual(Blend(f, i, 1.0), f) || !BitEqual(Blend(f, i, 0.0), i)) ++blend_bad;
  }
  if (blend_bad > 0) failures.push_back("blend endpoints x" + std::to_string(blend_bad));

  int reversal_bad = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const double psi = rng.Uniform(kAmplitudeMin, kAmplitudeMax);
    const int n = static_cast<int>(rng.UniformInt(2, 400));
    const Trajectory f = ForwardTrajectory(psi, n);
    const Trajectory inv = InverseTrajectory(psi, n);
    for (int k = 0; k < n; ++k) {
      if (inv.values(k, 0) != f.values(n - 1 - k, 0)) {
        ++reversal_bad;
        break;
      }
    }
  }
  if (reversal_bad > 0) failures.push_back("time reversal x" + std::to_string(reversal_bad));

  double worst_perfect = 0.0;
  for (uint64_t seed = 0; seed < 50; ++seed) {
    SynthSpec spec;
    spec.condition = Condition::kPairedPerfect;
    spec.seed = seed;
    worst_perfect = std::max(worst_perfect, MakeConditionDatasets(spec).paired.pairing_cost);
  }
  if (!(worst_perfect <= 1e-9)) failures.push_back("paired-perfect cost " + Sci(worst_perfect));

  int sigma_bad = 0;
  double sigma_min = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 100000; ++i) {
    const LatentRep r = testing::RandomVector(rng, 128, -20, 20);
    const TaskEmbedding e = testing::RandomVector(rng, 16, -20, 20);
    const MlpBlock& dec = i % 2 == 0 ? model.dec_forward : model.dec_inverse;
    const double s = Decode(dec, r, e, rng.Uniform()).std[0];
    sigma_min = std::min(sigma_min, s);
    if (!(s > 0.0)) ++sigma_bad;
  }
  if (sigma_bad > 0) failures.push_back("sigma <= 0 x" + std::to_string(sigma_bad));

  std::ostringstream d;
  d << "500 permutation sets, 500 blends, 200 reversal grids, 50 paired-perfect sets "
       "(max cost "
    << Sci(worst_perfect) << "), 1e5 decodes (min sigma " << Sci(sigma_min) << ")";
  for (const std::string& f : failures) d << "; FAILED " << f;
  return {failures.empty(), d.str()};
}

// ---- A6 ---------------------------------------------------------------------

Verdict Determinism() {
  testing::TempDir dir("acceptance");
  const std::string bin = INVSKILL_CLI_PATH;
  std::vector<std::string> outs;
  for (const char* name : {"run1", "run2"}) {
    const std::string out = (dir / name).string();
    const std::string cmd = bin + " experiment --seeds 1 --conditions uniform --seed 6 --out " +
                            out + " > " + out + ".log 2>&1";
    const int status = std::system(cmd.c_str());
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
      return {false, std::string("experiment exited abnormally (") + name + ")"};
    }
    outs.push_back(out);
  }
  const bool report_same =
      ReadFile(outs[0] + "/report.csv") == ReadFile(outs[1] + "/report.csv");
  const bool summary_same =
      ReadFile(outs[0] + "/summary.csv") == ReadFile(outs[1] + "/summary.csv");
  return {report_same && summary_same,
          std::string("report.csv ") + (report_same ? "identical" : "DIFFERS") +
              ", summary.csv " + (summary_same ? "identical" : "DIFFERS") +
              " across two runs (master seed 6, default 60000 steps)"};
}

struct Criterion {
  const char* id;
  const char* name;
  std::function<Verdict()> run;
};

}  // namespace
}  // namespace invskill

int main(int argc, char** argv) {
  using invskill::Criterion;
  const std::vector<Criterion> all = {
      {"A1", "synthetic condition ordering", invskill::ConditionOrdering},
      {"A2", "assignment oracle", invskill::AssignmentOracle},
      {"A3", "gradient fidelity", invskill::GradientFidelity},
      {"A4", "freeze contract", invskill::FreezeContract},
      {"A5", "structural invariants", invskill::StructuralInvariants},
      {"A6", "determinism", invskill::Determinism},
  };
  std::set<std::string> selected(argv + 1, argv + argc);
  bool ok = true;
  for (const Criterion& c : all) {
    if (!selected.empty() && selected.count(c.id) == 0) continue;
    invskill::Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::cout << c.id << " " << (v.pass ? "PASS" : "FAIL") << " " << c.name << ": "
              << v.detail << std::endl;
    ok = ok && v.pass;
  }
  return ok ? 0 : 1;
}
