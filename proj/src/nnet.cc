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

#include "invskill/nnet.h"

#include <cmath>
#include <cstring>
#include <numbers>
#include <string>

#include "invskill/errors.h"

namespace invskill {

size_t MlpBlock::num_params() const {
  size_t n = 0;
  for (const auto& layer : layers) n += layer.W.size() + layer.b.size();
  return n;
}

void ValidateMlp(const MlpBlock& block) {
  if (block.layers.empty()) {
    throw Error(ErrorCode::kDimMismatch, "MLP block has no layers");
  }
  for (size_t l = 0; l < block.layers.size(); ++l) {
    const DenseLayer& layer = block.layers[l];
    if (layer.W.rows() != layer.b.size() || layer.W.rows() == 0 ||
        layer.W.cols() == 0) {
      throw Error(ErrorCode::kDimMismatch,
                  "layer " + std::to_string(l) + " has inconsistent W/b shape");
    }
    if (l > 0 && block.layers[l - 1].out_width() != layer.in_width()) {
      throw Error(ErrorCode::kDimMismatch,
                  "layer " + std::to_string(l) + " input width " +
                      std::to_string(layer.in_width()) +
                      " does not chain with previous output width " +
                      std::to_string(block.layers[l - 1].out_width()));
    }
    if (!layer.W.allFinite() || !layer.b.allFinite()) {
      throw Error(ErrorCode::kInvalidConfig,
                  "layer " + std::to_string(l) + " has non-finite parameters");
    }
  }
  if (block.layers.back().activation != Activation::kIdentity) {
    throw Error(ErrorCode::kDimMismatch,
                "last layer of an MLP block must be Identity");
  }
}

MlpBlock MakeMlp(std::span<const int> widths, Rng& rng) {
  if (widths.size() < 2) {
    throw Error(ErrorCode::kInvalidConfig, "MLP needs at least two widths");
  }
  MlpBlock block;
  for (size_t l = 0; l + 1 < widths.size(); ++l) {
    const int fan_in = widths[l];
    const int fan_out = widths[l + 1];
    if (fan_in <= 0 || fan_out <= 0) {
      throw Error(ErrorCode::kInvalidConfig, "MLP widths must be positive");
    }
    DenseLayer layer;
    layer.W.resize(fan_out, fan_in);
    const double a = std::sqrt(6.0 / (fan_in + fan_out));
    for (int i = 0; i < fan_out; ++i) {
      for (int j = 0; j < fan_in; ++j) layer.W(i, j) = rng.Uniform(-a, a);
    }
    layer.b = Eigen::VectorXd::Zero(fan_out);
    layer.activation = (l + 2 == widths.size()) ? Activation::kIdentity
                                                : Activation::kReLU;
    block.layers.push_back(std::move(layer));
  }
  return block;
}

Eigen::MatrixXd MlpForward(const MlpBlock& block, const Eigen::MatrixXd& x,
                           MlpTape* tape) {
  if (block.layers.empty()) {
    throw Error(ErrorCode::kDimMismatch, "MLP block has no layers");
  }
  if (x.rows() != block.in_width()) {
    throw Error(ErrorCode::kDimMismatch,
                "input width " + std::to_string(x.rows()) + " != expected " +
                    std::to_string(block.in_width()));
  }
  if (tape != nullptr) {
    tape->activations.clear();
    tape->activations.reserve(block.layers.size() + 1);
    tape->activations.push_back(x);
  }
  Eigen::MatrixXd a = x;
  for (const DenseLayer& layer : block.layers) {
    Eigen::MatrixXd z = layer.W * a;
    z.colwise() += layer.b;
    if (layer.activation == Activation::kReLU) z = z.cwiseMax(0.0);
    a = std::move(z);
    if (tape != nullptr) tape->activations.push_back(a);
  }
  return a;
}

Eigen::VectorXd MlpForward(const MlpBlock& block, const Eigen::VectorXd& x) {
  Eigen::MatrixXd y = MlpForward(block, Eigen::MatrixXd(x));
  return y.col(0);
}

MlpGrads MlpGrads::ZerosLike(const MlpBlock& block) {
  MlpGrads g;
  g.dW.reserve(block.layers.size());
  g.db.reserve(block.layers.size());
  for (const auto& layer : block.layers) {
    g.dW.push_back(Eigen::MatrixXd::Zero(layer.W.rows(), layer.W.cols()));
    g.db.push_back(Eigen::VectorXd::Zero(layer.b.size()));
  }
  return g;
}

void MlpGrads::SetZero() {
  for (auto& w : dW) w.setZero();
  for (auto& b : db) b.setZero();
}

MlpGrads& MlpGrads::operator+=(const MlpGrads& other) {
  if (other.dW.size() != dW.size()) {
    throw Error(ErrorCode::kDimMismatch, "gradient layer count mismatch");
  }
  for (size_t l = 0; l < dW.size(); ++l) {
    dW[l] += other.dW[l];
    db[l] += other.db[l];
  }
  return *this;
}

MlpGrads& MlpGrads::operator*=(double scale) {
  for (auto& w : dW) w *= scale;
  for (auto& b : db) b *= scale;
  return *this;
}

bool MlpGrads::AllZero() const {
  for (const auto& w : dW) {
    if (!w.isZero(0.0)) return false;
  }
  for (const auto& b : db) {
    if (!b.isZero(0.0)) return false;
  }
  return true;
}

void MlpBackward(const MlpBlock& block, const MlpTape& tape,
                 const Eigen::MatrixXd& d_out, MlpGrads& grads,
                 Eigen::MatrixXd* d_in) {
  const size_t num_layers = block.layers.size();
  if (tape.empty()) {
    throw Error(ErrorCode::kStateError, "backward called without a tape");
  }
  if (tape.activations.size() != num_layers + 1) {
    throw Error(ErrorCode::kStateError, "tape does not match the block");
  }
  if (grads.dW.size() != num_layers) {
    throw Error(ErrorCode::kDimMismatch, "gradient buffer does not match");
  }
  if (d_out.rows() != block.out_width() ||
      d_out.cols() != tape.activations.back().cols()) {
    throw Error(ErrorCode::kDimMismatch, "output gradient shape mismatch");
  }

  Eigen::MatrixXd delta = d_out;
  for (size_t l = num_layers; l-- > 0;) {
    const DenseLayer& layer = block.layers[l];
    if (layer.activation == Activation::kReLU) {
      // ReLU output is positive exactly where the pre-activation is.
      delta = (tape.activations[l + 1].array() > 0.0)
                  .select(delta, Eigen::MatrixXd::Zero(delta.rows(),
                                                       delta.cols()));
    }
    const Eigen::MatrixXd& input = tape.activations[l];
    grads.dW[l].noalias() += delta * input.transpose();
    grads.db[l] += delta.rowwise().sum();
    if (l > 0 || d_in != nullptr) {
      Eigen::MatrixXd prev = layer.W.transpose() * delta;
      delta = std::move(prev);
    }
  }
  if (d_in != nullptr) *d_in = std::move(delta);
}

double SoftplusStd(double z) {
  const double softplus = std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
  return softplus + kStdFloor;
}

double SoftplusStdGrad(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double GaussianNll(const GaussianPrediction& pred,
                   const Eigen::VectorXd& target) {
  return GaussianNll(pred, target, nullptr);
}

double GaussianNll(const GaussianPrediction& pred,
                   const Eigen::VectorXd& target, NllGrad* grad) {
  const Eigen::Index d = target.size();
  if (pred.mean.size() != d || pred.std.size() != d) {
    throw Error(ErrorCode::kDimMismatch, "prediction/target width mismatch");
  }
  for (Eigen::Index k = 0; k < d; ++k) {
    if (!(pred.std[k] > 0.0)) {
      throw Error(ErrorCode::kInvalidStd,
                  "standard deviation must be positive, got " +
                      std::to_string(pred.std[k]));
    }
  }
  const double half_log_two_pi = 0.5 * std::log(2.0 * std::numbers::pi);
  double nll = 0.0;
  if (grad != nullptr) {
    grad->d_mean.resize(d);
    grad->d_std.resize(d);
  }
  for (Eigen::Index k = 0; k < d; ++k) {
    const double s = pred.std[k];
    const double diff = target[k] - pred.mean[k];
    const double z = diff / s;
    nll += std::log(s) + half_log_two_pi + 0.5 * z * z;
    if (grad != nullptr) {
      grad->d_mean[k] = -z / s;
      grad->d_std[k] = (1.0 - z * z) / s;
    }
  }
  return nll;
}

AdamWState MakeAdamWState(size_t num_params, double lr, double weight_decay) {
  AdamWState state;
  state.m.assign(num_params, 0.0);
  state.v.assign(num_params, 0.0);
  state.lr = lr;
  state.weight_decay = weight_decay;
  return state;
}

namespace {

struct AdamWCoefficients {
  double bias1;
  double bias2;
};

AdamWCoefficients BeginStep(AdamWState& state) {
  ++state.step_count;
  const auto t = static_cast<double>(state.step_count);
  return {1.0 - std::pow(state.beta1, t), 1.0 - std::pow(state.beta2, t)};
}

void UpdateRange(double* params, const double* grads, size_t count,
                 size_t offset, const AdamWCoefficients& c,
                 AdamWState& state) {
  double* m = state.m.data() + offset;
  double* v = state.v.data() + offset;
  const double b1 = state.beta1;
  const double b2 = state.beta2;
  for (size_t i = 0; i < count; ++i) {
    const double g = grads[i];
    m[i] = b1 * m[i] + (1.0 - b1) * g;
    v[i] = b2 * v[i] + (1.0 - b2) * g * g;
    const double m_hat = m[i] / c.bias1;
    const double v_hat = v[i] / c.bias2;
    params[i] -= state.lr * (m_hat / (std::sqrt(v_hat) + state.eps) +
                             state.weight_decay * params[i]);
  }
}

}  // namespace

void AdamWStep(std::span<double> params, std::span<const double> grads,
               AdamWState& state) {
  if (params.size() != grads.size() || state.m.size() != params.size() ||
      state.v.size() != params.size()) {
    throw Error(ErrorCode::kDimMismatch, "AdamW parameter/state size mismatch");
  }
  const AdamWCoefficients c = BeginStep(state);
  UpdateRange(params.data(), grads.data(), params.size(), 0, c, state);
}

void AdamWStep(MlpBlock& block, const MlpGrads& grads, AdamWState& state) {
  if (grads.dW.size() != block.layers.size() ||
      state.m.size() != block.num_params() ||
      state.v.size() != block.num_params()) {
    throw Error(ErrorCode::kDimMismatch, "AdamW parameter/state size mismatch");
  }
  for (size_t l = 0; l < block.layers.size(); ++l) {
    if (grads.dW[l].rows() != block.layers[l].W.rows() ||
        grads.dW[l].cols() != block.layers[l].W.cols() ||
        grads.db[l].size() != block.layers[l].b.size()) {
      throw Error(ErrorCode::kDimMismatch, "gradient shape mismatch");
    }
  }
  const AdamWCoefficients c = BeginStep(state);
  size_t offset = 0;
  for (size_t l = 0; l < block.layers.size(); ++l) {
    DenseLayer& layer = block.layers[l];
    const auto nw = static_cast<size_t>(layer.W.size());
    UpdateRange(layer.W.data(), grads.dW[l].data(), nw, offset, c, state);
    offset += nw;
    const auto nb = static_cast<size_t>(layer.b.size());
    UpdateRange(layer.b.data(), grads.db[l].data(), nb, offset, c, state);
    offset += nb;
  }
}

uint64_t ParamChecksum(const MlpBlock& block) {
  uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](const double* data, Eigen::Index n) {
    for (Eigen::Index i = 0; i < n; ++i) {
      uint64_t bits;
      std::memcpy(&bits, &data[i], sizeof(bits));
      for (int k = 0; k < 8; ++k) {
        h ^= (bits >> (8 * k)) & 0xffU;
        h *= 0x100000001b3ULL;
      }
    }
  };
  for (const auto& layer : block.layers) {
    mix(layer.W.data(), layer.W.size());
    mix(layer.b.data(), layer.b.size());
  }
  return h;
}

}  // namespace invskill
