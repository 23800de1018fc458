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

#ifndef INVSKILL_NNET_H_
#define INVSKILL_NNET_H_

// Dense-network numerics: batched MLP evaluation with an activation tape,
// reverse-mode layer gradients, the Gaussian negative log-likelihood with a
// softplus standard-deviation head, and AdamW.
//
// Batches are column-major: an input of width `in` for `n` samples is an
// (in x n) matrix, one sample per column. Every column is evaluated
// independently of the others, so results do not depend on batch size.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "invskill/rng.h"

namespace invskill {

enum class Activation { kReLU, kIdentity };

struct DenseLayer {
  Eigen::MatrixXd W;  // out x in
  Eigen::VectorXd b;  // out
  Activation activation = Activation::kIdentity;

  int in_width() const { return static_cast<int>(W.cols()); }
  int out_width() const { return static_cast<int>(W.rows()); }
};

struct MlpBlock {
  std::vector<DenseLayer> layers;

  int in_width() const { return layers.front().in_width(); }
  int out_width() const { return layers.back().out_width(); }
  size_t num_params() const;
};

// Throws kDimMismatch unless widths chain, the block is nonempty, and the
// last layer is Identity; kInvalidConfig on non-finite parameters.
void ValidateMlp(const MlpBlock& block);

// Builds a block with layer widths `widths` (input first). Hidden layers use
// ReLU, the output layer Identity. W ~ U[-a, a] with a = sqrt(6/(fan_in +
// fan_out)), drawn row by row; b = 0.
MlpBlock MakeMlp(std::span<const int> widths, Rng& rng);

// Activations recorded by a forward pass: activations[0] is the block input,
// activations[l + 1] the output of layer l.
struct MlpTape {
  std::vector<Eigen::MatrixXd> activations;

  bool empty() const { return activations.empty(); }
  void clear() { activations.clear(); }
};

// Evaluates the block on each column of `x`. When `tape` is non-null it is
// overwritten with the activations needed by MlpBackward.
Eigen::MatrixXd MlpForward(const MlpBlock& block, const Eigen::MatrixXd& x,
                           MlpTape* tape = nullptr);
Eigen::VectorXd MlpForward(const MlpBlock& block, const Eigen::VectorXd& x);

// Parameter-shaped gradient accumulator.
struct MlpGrads {
  std::vector<Eigen::MatrixXd> dW;
  std::vector<Eigen::VectorXd> db;

  static MlpGrads ZerosLike(const MlpBlock& block);
  void SetZero();
  MlpGrads& operator+=(const MlpGrads& other);
  MlpGrads& operator*=(double scale);
  bool AllZero() const;
};

// Back-propagates dL/d(output) `d_out` through the recorded tape. Parameter
// gradients are added into `grads`; dL/d(input) is written to `d_in` when it
// is non-null. Throws kStateError when the tape is missing or does not match
// the block.
void MlpBackward(const MlpBlock& block, const MlpTape& tape,
                 const Eigen::MatrixXd& d_out, MlpGrads& grads,
                 Eigen::MatrixXd* d_in = nullptr);

// Lower bound added to the softplus standard deviation.
inline constexpr double kStdFloor = 1e-6;

// sigma = softplus(z) + kStdFloor, computed without overflow.
double SoftplusStd(double z);
// d sigma / d z, i.e. the logistic sigmoid.
double SoftplusStdGrad(double z);

struct GaussianPrediction {
  Eigen::VectorXd mean;
  Eigen::VectorXd std;
};

// sum_k [ ln s_k + ln(2 pi)/2 + ((t_k - m_k) / s_k)^2 / 2 ].
// Throws kInvalidStd for any s_k <= 0 and kDimMismatch on shape mismatch.
double GaussianNll(const GaussianPrediction& pred,
                   const Eigen::VectorXd& target);

struct NllGrad {
  Eigen::VectorXd d_mean;
  Eigen::VectorXd d_std;
};

double GaussianNll(const GaussianPrediction& pred,
                   const Eigen::VectorXd& target, NllGrad* grad);

struct AdamWState {
  std::vector<double> m;
  std::vector<double> v;
  int64_t step_count = 0;
  double lr = 5e-4;
  double weight_decay = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

AdamWState MakeAdamWState(size_t num_params, double lr, double weight_decay);

// One decoupled-weight-decay step with bias-corrected moments:
//   theta <- theta - lr * (m_hat / (sqrt(v_hat) + eps) + weight_decay * theta)
void AdamWStep(std::span<double> params, std::span<const double> grads,
               AdamWState& state);
void AdamWStep(MlpBlock& block, const MlpGrads& grads, AdamWState& state);

// FNV-1a over the bit patterns of every parameter, in layer order (W
// column-major, then b).
uint64_t ParamChecksum(const MlpBlock& block);

}  // namespace invskill

#endif  // INVSKILL_NNET_H_
