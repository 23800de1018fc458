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
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "invskill/errors.h"
#include "invskill/rng.h"
#include "oracle.h"
#include "test_util.h"

namespace invskill {
namespace {

constexpr double kHalfLog2Pi = 0.918938533204672742;

MlpBlock SingleLayer(Eigen::MatrixXd W, Eigen::VectorXd b, Activation act) {
  MlpBlock block;
  block.layers.push_back({std::move(W), std::move(b), act});
  return block;
}

TEST(MlpForward, IdentityLayer) {
  const MlpBlock block = SingleLayer(Eigen::Matrix2d::Identity(),
                                     Eigen::Vector2d::Zero(),
                                     Activation::kIdentity);
  const Eigen::VectorXd y = MlpForward(block, Eigen::VectorXd(Eigen::Vector2d(1, 2)));
  EXPECT_EQ(y, Eigen::VectorXd(Eigen::Vector2d(1, 2)));
}

TEST(MlpForward, ReluClamps) {
  Eigen::MatrixXd W(2, 1);
  W << 1, -1;
  const MlpBlock block = SingleLayer(W, Eigen::Vector2d::Zero(), Activation::kReLU);
  const Eigen::VectorXd y = MlpForward(block, Eigen::VectorXd(Eigen::VectorXd::Constant(1, 3.0)));
  EXPECT_EQ(y[0], 3.0);
  EXPECT_EQ(y[1], 0.0);
}

TEST(MlpForward, MatchesStraightLineOracle) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const std::vector<int> widths = {3, 7, 5, 2};
    MlpBlock block = MakeMlp(widths, rng);
    testing::RandomizeBiases(block, rng);
    const Eigen::VectorXd x = testing::RandomVector(rng, 3);
    const Eigen::VectorXd y = MlpForward(block, x);
    const std::vector<double> ref =
        oracle::Eval(oracle::FromMlp<double>(block), oracle::ToVec<double>(x));
    ASSERT_EQ(y.size(), 2);
    for (int i = 0; i < 2; ++i) EXPECT_NEAR(y[i], ref[i], 1e-13);
  }
}

TEST(MlpForward, BatchColumnsMatchSingleEvaluation) {
  Rng rng(4);
  const std::vector<int> widths = {2, 16, 16, 3};
  const MlpBlock block = MakeMlp(widths, rng);
  Eigen::MatrixXd X(2, 9);
  for (int c = 0; c < 9; ++c) X.col(c) = testing::RandomVector(rng, 2);
  const Eigen::MatrixXd Y = MlpForward(block, X);
  for (int c = 0; c < 9; ++c) {
    const Eigen::VectorXd y = MlpForward(block, Eigen::VectorXd(X.col(c)));
    EXPECT_LT((Y.col(c) - y).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(MlpForward, RejectsWrongWidth) {
  Rng rng(1);
  const std::vector<int> widths = {3, 4, 2};
  const MlpBlock block = MakeMlp(widths, rng);
  try {
    MlpForward(block, Eigen::VectorXd(Eigen::VectorXd::Zero(2)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimMismatch);
  }
}

TEST(MakeMlp, LayoutAndInit) {
  Rng rng(2);
  const std::vector<int> widths = {2, 128, 128, 128};
  const MlpBlock block = MakeMlp(widths, rng);
  ASSERT_EQ(block.layers.size(), 3u);
  EXPECT_EQ(block.layers[0].activation, Activation::kReLU);
  EXPECT_EQ(block.layers[1].activation, Activation::kReLU);
  EXPECT_EQ(block.layers[2].activation, Activation::kIdentity);
  EXPECT_EQ(block.num_params(), 2u * 128 + 128 + 2 * (128u * 128 + 128));
  const double limit = std::sqrt(6.0 / (128 + 128));
  EXPECT_LE(block.layers[1].W.cwiseAbs().maxCoeff(), limit);
  EXPECT_TRUE(block.layers[1].b.isZero());
}

TEST(GaussianNll, ClosedFormValues) {
  GaussianPrediction pred{Eigen::VectorXd::Constant(1, 0.3),
                          Eigen::VectorXd::Constant(1, 1.0)};
  EXPECT_NEAR(GaussianNll(pred, Eigen::VectorXd::Constant(1, 0.3)), 0.918938533,
              1e-9);
  pred.mean[0] = 0.0;
  EXPECT_NEAR(GaussianNll(pred, Eigen::VectorXd::Constant(1, 1.0)), 1.418938533,
              1e-9);
}

TEST(GaussianNll, DoublingSigmaAddsLn2PerDimension) {
  Rng rng(3);
  for (int d = 1; d <= 4; ++d) {
    const Eigen::VectorXd mu = testing::RandomVector(rng, d);
    const Eigen::VectorXd sigma = testing::RandomVector(rng, d, 0.1, 2.0);
    const double a = GaussianNll({mu, sigma}, mu);
    const double b = GaussianNll({mu, 2.0 * sigma}, mu);
    EXPECT_NEAR(b - a, d * std::numbers::ln2, 1e-12);
  }
}

TEST(GaussianNll, SumsDimensions) {
  const GaussianPrediction pred{Eigen::Vector2d(0.0, 1.0), Eigen::Vector2d(1.0, 2.0)};
  const double expected = 2 * kHalfLog2Pi + std::log(2.0) + 0.5 * 1.0 + 0.5 * 0.25;
  EXPECT_NEAR(GaussianNll(pred, Eigen::Vector2d(1.0, 2.0)), expected, 1e-12);
}

TEST(GaussianNll, RejectsNonPositiveStd) {
  for (double s : {0.0, -1.0, std::nan("")}) {
    const GaussianPrediction pred{Eigen::VectorXd::Zero(1),
                                  Eigen::VectorXd::Constant(1, s)};
    try {
      GaussianNll(pred, Eigen::VectorXd::Zero(1));
      FAIL() << s;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidStd);
    }
  }
}

TEST(GaussianNll, MeanGradientChangesSignAtTarget) {
  NllGrad g;
  const Eigen::VectorXd sigma = Eigen::VectorXd::Constant(1, 0.5);
  const Eigen::VectorXd target = Eigen::VectorXd::Constant(1, 0.2);
  GaussianNll({Eigen::VectorXd::Constant(1, 0.1), sigma}, target, &g);
  EXPECT_LT(g.d_mean[0], 0.0);
  GaussianNll({Eigen::VectorXd::Constant(1, 0.3), sigma}, target, &g);
  EXPECT_GT(g.d_mean[0], 0.0);
  GaussianNll({target, sigma}, target, &g);
  EXPECT_EQ(g.d_mean[0], 0.0);
}

TEST(SoftplusStd, PositiveWithFloor) {
  EXPECT_GT(SoftplusStd(-1000.0), 0.0);
  EXPECT_EQ(SoftplusStd(-1000.0), kStdFloor);
  EXPECT_NEAR(SoftplusStd(0.0), std::log(2.0) + kStdFloor, 1e-15);
  EXPECT_NEAR(SoftplusStd(50.0), 50.0 + kStdFloor, 1e-12);
  EXPECT_NEAR(SoftplusStdGrad(0.0), 0.5, 1e-15);
}

TEST(MlpBackward, QuadraticLossOnLinearLayer) {
  Rng rng(5);
  Eigen::MatrixXd W(2, 3);
  W << 0.5, -1.0, 2.0, 0.25, 0.75, -0.5;
  const Eigen::Vector2d b(0.1, -0.2);
  const MlpBlock block = SingleLayer(W, b, Activation::kIdentity);
  const Eigen::Vector3d x(1.0, 2.0, -1.0);
  const Eigen::Vector2d t(0.3, 0.4);
  MlpTape tape;
  const Eigen::MatrixXd y = MlpForward(block, Eigen::MatrixXd(x), &tape);
  const Eigen::VectorXd residual = y.col(0) - t;
  MlpGrads grads = MlpGrads::ZerosLike(block);
  MlpBackward(block, tape, 2.0 * residual, grads);
  const Eigen::MatrixXd expected = 2.0 * residual * x.transpose();
  EXPECT_LT((grads.dW[0] - expected).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((grads.db[0] - 2.0 * residual).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(MlpBackward, MissingTapeIsStateError) {
  Rng rng(6);
  const std::vector<int> widths = {2, 3, 1};
  const MlpBlock block = MakeMlp(widths, rng);
  MlpGrads grads = MlpGrads::ZerosLike(block);
  try {
    MlpBackward(block, MlpTape{}, Eigen::MatrixXd::Ones(1, 1), grads);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kStateError);
  }
}

// NLL of a small random MLP whose output is read as [mu; pre-std].
TEST(MlpBackward, MatchesFiniteDifferencesOnRandomNets) {
  oracle::GradCheckStats stats;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(1000 + seed);
    const int d_in = static_cast<int>(rng.UniformInt(1, 4));
    const int d_y = static_cast<int>(rng.UniformInt(1, 3));
    std::vector<int> widths = {d_in};
    const int depth = static_cast<int>(rng.UniformInt(1, 3));
    for (int l = 0; l < depth; ++l) {
      widths.push_back(static_cast<int>(rng.UniformInt(2, 6)));
    }
    widths.push_back(2 * d_y);
    MlpBlock block = MakeMlp(widths, rng);
    testing::RandomizeBiases(block, rng);
    const Eigen::VectorXd x = testing::RandomVector(rng, d_in);
    const Eigen::VectorXd target = testing::RandomVector(rng, d_y);

    MlpTape tape;
    const Eigen::MatrixXd raw = MlpForward(block, Eigen::MatrixXd(x), &tape);
    GaussianPrediction pred{raw.col(0).head(d_y), Eigen::VectorXd(d_y)};
    for (int k = 0; k < d_y; ++k) pred.std[k] = SoftplusStd(raw(d_y + k, 0));
    NllGrad g;
    GaussianNll(pred, target, &g);
    Eigen::MatrixXd d_raw(2 * d_y, 1);
    for (int k = 0; k < d_y; ++k) {
      d_raw(k, 0) = g.d_mean[k];
      d_raw(d_y + k, 0) = g.d_std[k] * SoftplusStdGrad(raw(d_y + k, 0));
    }
    MlpGrads grads = MlpGrads::ZerosLike(block);
    MlpBackward(block, tape, d_raw, grads);

    oracle::Block<long double> ob = oracle::FromMlp<long double>(block);
    auto refs = oracle::ParamRefs(ob, grads);
    const auto xl = oracle::ToVec<long double>(x);
    const auto tl = oracle::ToVec<long double>(target);
    oracle::CheckGradients(
        refs,
        [&](oracle::KinkPattern* k) {
          return oracle::RawNll(oracle::Eval(ob, xl, k), tl);
        },
        1e-5, 1e-4, stats);
  }
  EXPECT_EQ(stats.failed, 0) << "worst relative error " << stats.worst_rel_error;
  EXPECT_GT(stats.checked, 1000);
  EXPECT_LT(stats.kink_skipped, stats.checked / 100 + 1);
}

TEST(MlpBackward, InputGradient) {
  Rng rng(8);
  const std::vector<int> widths = {3, 5, 2};
  MlpBlock block = MakeMlp(widths, rng);
  testing::RandomizeBiases(block, rng);
  const Eigen::VectorXd x = testing::RandomVector(rng, 3);
  MlpTape tape;
  MlpForward(block, Eigen::MatrixXd(x), &tape);
  MlpGrads grads = MlpGrads::ZerosLike(block);
  Eigen::MatrixXd d_in;
  // loss = sum of outputs
  MlpBackward(block, tape, Eigen::MatrixXd::Ones(2, 1), grads, &d_in);
  const oracle::Block<long double> ob = oracle::FromMlp<long double>(block);
  for (int i = 0; i < 3; ++i) {
    auto xp = oracle::ToVec<long double>(x);
    auto xm = xp;
    xp[i] += 1e-6L;
    xm[i] -= 1e-6L;
    const auto yp = oracle::Eval(ob, xp);
    const auto ym = oracle::Eval(ob, xm);
    const double fd =
        static_cast<double>((yp[0] + yp[1] - ym[0] - ym[1]) / 2e-6L);
    EXPECT_LT(oracle::RelativeError(fd, d_in(i, 0)), 1e-6);
  }
}

TEST(AdamW, FirstStepOnScalar) {
  double theta = 1.0;
  const double g = 1.0;
  AdamWState state = MakeAdamWState(1, 0.1, 0.0);
  AdamWStep(std::span<double>(&theta, 1), std::span<const double>(&g, 1), state);
  EXPECT_NEAR(theta, 0.9, 1e-7);
  EXPECT_EQ(state.step_count, 1);
}

TEST(AdamW, ZeroGradientZeroDecayIsIdentity) {
  std::vector<double> theta = {1.0, -2.5, 3e-7};
  const std::vector<double> before = theta;
  const std::vector<double> g(3, 0.0);
  AdamWState state = MakeAdamWState(3, 0.1, 0.0);
  for (int i = 0; i < 5; ++i) AdamWStep(theta, g, state);
  EXPECT_EQ(theta, before);
}

TEST(AdamW, DecayOnly) {
  double theta = 1.0;
  const double g = 0.0;
  AdamWState state = MakeAdamWState(1, 0.1, 0.5);
  AdamWStep(std::span<double>(&theta, 1), std::span<const double>(&g, 1), state);
  EXPECT_NEAR(theta, 0.95, 1e-15);
}

TEST(AdamW, MatchesReferenceRecurrence) {
  Rng rng(9);
  std::vector<double> theta(4), g(4);
  for (double& t : theta) t = rng.Uniform(-1, 1);
  std::vector<double> ref = theta, m(4, 0.0), v(4, 0.0);
  AdamWState state = MakeAdamWState(4, 0.01, 0.1);
  for (int step = 1; step <= 10; ++step) {
    for (double& x : g) x = rng.Uniform(-1, 1);
    AdamWStep(theta, g, state);
    for (int i = 0; i < 4; ++i) {
      m[i] = 0.9 * m[i] + 0.1 * g[i];
      v[i] = 0.999 * v[i] + 0.001 * g[i] * g[i];
      const double mh = m[i] / (1 - std::pow(0.9, step));
      const double vh = v[i] / (1 - std::pow(0.999, step));
      ref[i] -= 0.01 * (mh / (std::sqrt(vh) + 1e-8) + 0.1 * ref[i]);
    }
  }
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(theta[i], ref[i], 1e-13);
}

TEST(AdamW, BlockStepIsDeterministic) {
  auto run = [] {
    Rng rng(10);
    const std::vector<int> widths = {2, 8, 2};
    MlpBlock block = MakeMlp(widths, rng);
    AdamWState state = MakeAdamWState(block.num_params(), 1e-3, 1e-3);
    MlpGrads grads = MlpGrads::ZerosLike(block);
    for (int s = 0; s < 3; ++s) {
      for (auto& w : grads.dW) w.setConstant(rng.Uniform(-1, 1));
      AdamWStep(block, grads, state);
    }
    return ParamChecksum(block);
  };
  EXPECT_EQ(run(), run());
}

}  // namespace
}  // namespace invskill
