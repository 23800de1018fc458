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

#ifndef INVSKILL_MODEL_H_
#define INVSKILL_MODEL_H_

// The joint forward/inverse conditional neural process.
//
// Observations (t, y) from one role are encoded point-wise and averaged into
// a latent r. Forward and inverse latents are blended convexly, the task
// parameter is embedded by its own network, and each decoder maps
// r ++ e_psi ++ [t_query] to a Gaussian over the sensorimotor values at
// t_query.

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "invskill/core.h"
#include "invskill/nnet.h"
#include "invskill/rng.h"

namespace invskill {

struct ObservationPoint {
  double t = 0.0;
  Eigen::VectorXd y;
};

using LatentRep = Eigen::VectorXd;
using TaskEmbedding = Eigen::VectorXd;

// Layer widths for the five networks. Hidden lists exclude input and output.
struct ModelArch {
  ModelDims dims;
  std::vector<int> encoder_hidden = {128, 128};
  std::vector<int> embed_hidden = {32};
  std::vector<int> decoder_hidden = {128, 128};
};

// Freshly initialized model; the five blocks draw from `rng` in the order
// E_F, E_I, E_psi, D_F, D_I.
JointModel MakeJointModel(const ModelArch& arch, Rng& rng);

// Observations sorted by ascending t; equal times keep input order.
std::vector<ObservationPoint> CanonicalOrder(
    std::span<const ObservationPoint> obs);

// Encoder input matrix, one column per observation: [t; y].
Eigen::MatrixXd ObservationMatrix(std::span<const ObservationPoint> obs);

// Mean of the per-point encodings, accumulated in canonical order. Throws
// kEmptyObservation for an empty set.
LatentRep Encode(const MlpBlock& encoder,
                 std::span<const ObservationPoint> obs);

// p * r_forward + (1 - p) * r_inverse. p = 1 and p = 0 return the matching
// endpoint unchanged. Throws kInvalidWeight outside [0, 1].
LatentRep Blend(const LatentRep& r_forward, const LatentRep& r_inverse,
                double p);

TaskEmbedding EmbedTaskParam(const MlpBlock& embed,
                             const Eigen::VectorXd& psi);

// Decoder input column r ++ e ++ [t_q].
Eigen::VectorXd DecoderInput(const LatentRep& r, const TaskEmbedding& e,
                             double t_query);

// Splits a raw decoder output (mean, pre-std) into a Gaussian.
GaussianPrediction SplitPrediction(const Eigen::VectorXd& raw);

GaussianPrediction Decode(const MlpBlock& decoder, const LatentRep& r,
                          const TaskEmbedding& e, double t_query);

const MlpBlock& EncoderFor(const JointModel& model, Role role);
const MlpBlock& DecoderFor(const JointModel& model, Role role);

struct GeneratedTrajectory {
  std::vector<double> times;
  Eigen::MatrixXd mean;  // T x d_y
  Eigen::MatrixXd std;   // T x d_y
};

// Conditions on `obs` through the encoder of `obs_role` (no blending) and
// decodes every query time with the decoder of `target_role`.
GeneratedTrajectory GenerateTrajectory(const JointModel& model,
                                       std::span<const ObservationPoint> obs,
                                       Role obs_role,
                                       const Eigen::VectorXd& psi,
                                       Role target_role,
                                       std::span<const double> query_times);

// n evenly spaced times from 0 to 1 inclusive (n >= 2).
std::vector<double> UniformGrid(int n);

inline constexpr int kDefaultQueryGrid = 200;

// "t,mu_1..mu_d,sigma_1..sigma_d" with a header row.
std::string GeneratedTrajectoryCsv(const GeneratedTrajectory& traj);

}  // namespace invskill

#endif  // INVSKILL_MODEL_H_
