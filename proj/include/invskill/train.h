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

#ifndef INVSKILL_TRAIN_H_
#define INVSKILL_TRAIN_H_

// Interleaved training of the joint model.
//
// Each step is either a paired pass (a batch of matched forward/inverse
// demonstrations, latent blended with p ~ U(0, 1), both decoders trained) or,
// with probability p_aux, an auxiliary pass (forward-only demonstrations,
// p = 1, E_I and D_I frozen). One AdamW step follows every training step.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "invskill/core.h"
#include "invskill/model.h"
#include "invskill/nnet.h"
#include "invskill/rng.h"

namespace invskill {

enum class PassKind { kPaired, kAuxiliary };

std::string_view PassKindName(PassKind kind);

struct QueryPoint {
  double t = 0.0;
  Eigen::VectorXd target;
};

// `count` query points drawn uniformly (with replacement) from the samples.
std::vector<QueryPoint> SampleQueries(const Trajectory& traj, int count,
                                      Rng& rng);

// n ~ U{obs_min..obs_max} distinct samples of `traj`, in draw order. Throws
// kInvalidTrajectory when the trajectory has fewer than obs_max samples.
std::vector<ObservationPoint> SampleObservations(const Trajectory& traj,
                                                 int obs_min, int obs_max,
                                                 Rng& rng);

// All random choices of one paired pass.
struct PairedSample {
  std::vector<ObservationPoint> obs_forward;
  std::vector<ObservationPoint> obs_inverse;
  double p = 0.5;
  Eigen::VectorXd psi;  // the forward demonstration's task parameter
  std::vector<QueryPoint> query_forward;
  std::vector<QueryPoint> query_inverse;
};

struct AuxiliarySample {
  std::vector<ObservationPoint> obs;
  Eigen::VectorXd psi;
  std::vector<QueryPoint> query;
};

// Draw order: forward observations, inverse observations, p, forward
// queries, inverse queries.
PairedSample DrawPairedSample(const DemoPair& pair, const TrainConfig& cfg,
                              Rng& rng);

// Throws kRoleError for a non-forward demonstration.
AuxiliarySample DrawAuxiliarySample(const Demonstration& demo,
                                    const TrainConfig& cfg, Rng& rng);

// Gradients for the five blocks. Auxiliary passes leave the inverse blocks
// untouched and clear `has_inverse`.
struct JointGrads {
  MlpGrads enc_forward;
  MlpGrads enc_inverse;
  MlpGrads embed_psi;
  MlpGrads dec_forward;
  MlpGrads dec_inverse;
  bool has_inverse = true;

  static JointGrads ZerosLike(const JointModel& model);
  void SetZero();
  JointGrads& operator*=(double scale);
};

struct PassResult {
  double loss = 0.0;
  JointGrads grads;
};

// Paired loss: mean NLL of D_F over the forward queries plus mean NLL of D_I
// over the inverse queries, both decoded from the blended latent.
double PairedLoss(const JointModel& model, const PairedSample& sample);
// Adds `weight` times the paired-pass gradients into `grads` and returns the
// unweighted loss.
double AccumulatePairedPass(const JointModel& model, const PairedSample& sample,
                            double weight, JointGrads& grads);
PassResult PairedPass(const JointModel& model, const PairedSample& sample);
PassResult PairedPass(const JointModel& model, const DemoPair& pair,
                      const TrainConfig& cfg, Rng& rng);

// Auxiliary loss: mean NLL of D_F decoded from the forward latent alone.
double AuxiliaryLoss(const JointModel& model, const AuxiliarySample& sample);
double AccumulateAuxiliaryPass(const JointModel& model,
                               const AuxiliarySample& sample, double weight,
                               JointGrads& grads);
PassResult AuxiliaryPass(const JointModel& model,
                         const AuxiliarySample& sample);
PassResult AuxiliaryPass(const JointModel& model, const Demonstration& demo,
                         const TrainConfig& cfg, Rng& rng);

// One AdamW state per block.
struct JointOptimizer {
  AdamWState enc_forward;
  AdamWState enc_inverse;
  AdamWState embed_psi;
  AdamWState dec_forward;
  AdamWState dec_inverse;

  static JointOptimizer For(const JointModel& model, const TrainConfig& cfg);
  // Steps the forward-side blocks always and the inverse blocks only when
  // grads.has_inverse; frozen blocks keep their moments and step count.
  void Step(JointModel& model, const JointGrads& grads);
};

struct StepRecord {
  int step = 0;  // 1-based
  PassKind kind = PassKind::kPaired;
  double loss = 0.0;
};

struct TrainLog {
  std::vector<StepRecord> records;
  uint64_t final_checksum = 0;
  double effective_p_aux = 0.0;

  int CountKind(PassKind kind) const;
  // "step,pass,loss" with a header row.
  std::string ToCsv() const;
};

struct TrainResult {
  JointModel model;
  TrainLog log;
};

// Invoked after every optimizer step with the updated model.
using StepCallback = std::function<void(const StepRecord&, const JointModel&)>;

// Runs cfg.steps training steps from cfg.seed. An empty auxiliary set forces
// p_aux to 0. Throws kEmptyDataset when `paired` has no pairs.
TrainResult Train(JointModel model, const PairedDataset& paired,
                  const AuxiliaryDataset& aux, const TrainConfig& cfg,
                  const StepCallback& on_step = {});

uint64_t ModelChecksum(const JointModel& model);

}  // namespace invskill

#endif  // INVSKILL_TRAIN_H_
