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

#include "invskill/model.h"

#include <algorithm>
#include <numeric>
#include <string>

#include "invskill/errors.h"

namespace invskill {

namespace {

std::vector<int> Widths(int in, const std::vector<int>& hidden, int out) {
  std::vector<int> w;
  w.push_back(in);
  w.insert(w.end(), hidden.begin(), hidden.end());
  w.push_back(out);
  return w;
}

}  // namespace

JointModel MakeJointModel(const ModelArch& arch, Rng& rng) {
  const ModelDims& d = arch.dims;
  if (d.d_y < 1 || d.d_psi < 1 || d.d_r < 1 || d.d_e < 1) {
    throw Error(ErrorCode::kInvalidConfig, "model widths must be positive");
  }
  JointModel model;
  model.dims = d;
  const auto enc = Widths(1 + d.d_y, arch.encoder_hidden, d.d_r);
  const auto emb = Widths(d.d_psi, arch.embed_hidden, d.d_e);
  const auto dec = Widths(d.d_r + d.d_e + 1, arch.decoder_hidden, 2 * d.d_y);
  model.enc_forward = MakeMlp(enc, rng);
  model.enc_inverse = MakeMlp(enc, rng);
  model.embed_psi = MakeMlp(emb, rng);
  model.dec_forward = MakeMlp(dec, rng);
  model.dec_inverse = MakeMlp(dec, rng);
  return model;
}

std::vector<ObservationPoint> CanonicalOrder(
    std::span<const ObservationPoint> obs) {
  std::vector<ObservationPoint> sorted(obs.begin(), obs.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const ObservationPoint& a, const ObservationPoint& b) {
                     return a.t < b.t;
                   });
  return sorted;
}

Eigen::MatrixXd ObservationMatrix(std::span<const ObservationPoint> obs) {
  if (obs.empty()) {
    throw Error(ErrorCode::kEmptyObservation, "no observations");
  }
  const Eigen::Index d_y = obs[0].y.size();
  Eigen::MatrixXd x(1 + d_y, static_cast<Eigen::Index>(obs.size()));
  for (size_t k = 0; k < obs.size(); ++k) {
    if (obs[k].y.size() != d_y) {
      throw Error(ErrorCode::kDimMismatch, "observation widths differ");
    }
    if (!(obs[k].t >= 0.0 && obs[k].t <= 1.0)) {
      throw Error(ErrorCode::kInvalidTrajectory,
                  "observation time outside [0, 1]");
    }
    const auto col = static_cast<Eigen::Index>(k);
    x(0, col) = obs[k].t;
    x.block(1, col, d_y, 1) = obs[k].y;
  }
  return x;
}

LatentRep Encode(const MlpBlock& encoder,
                 std::span<const ObservationPoint> obs) {
  if (obs.empty()) {
    throw Error(ErrorCode::kEmptyObservation, "cannot encode zero observations");
  }
  const std::vector<ObservationPoint> sorted = CanonicalOrder(obs);
  const Eigen::MatrixXd h = MlpForward(encoder, ObservationMatrix(sorted));
  LatentRep r = h.col(0);
  for (Eigen::Index k = 1; k < h.cols(); ++k) r += h.col(k);
  return r / static_cast<double>(h.cols());
}

LatentRep Blend(const LatentRep& r_forward, const LatentRep& r_inverse,
                double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kInvalidWeight,
                "blend weight must be in [0, 1], got " + std::to_string(p));
  }
  if (r_forward.size() != r_inverse.size()) {
    throw Error(ErrorCode::kDimMismatch, "latent widths differ");
  }
  if (p == 1.0) return r_forward;
  if (p == 0.0) return r_inverse;
  return p * r_forward + (1.0 - p) * r_inverse;
}

TaskEmbedding EmbedTaskParam(const MlpBlock& embed,
                             const Eigen::VectorXd& psi) {
  return MlpForward(embed, psi);
}

Eigen::VectorXd DecoderInput(const LatentRep& r, const TaskEmbedding& e,
                             double t_query) {
  Eigen::VectorXd in(r.size() + e.size() + 1);
  in << r, e, t_query;
  return in;
}

GaussianPrediction SplitPrediction(const Eigen::VectorXd& raw) {
  const Eigen::Index d_y = raw.size() / 2;
  GaussianPrediction pred;
  pred.mean = raw.head(d_y);
  pred.std.resize(d_y);
  for (Eigen::Index k = 0; k < d_y; ++k) {
    pred.std[k] = SoftplusStd(raw[d_y + k]);
  }
  return pred;
}

GaussianPrediction Decode(const MlpBlock& decoder, const LatentRep& r,
                          const TaskEmbedding& e, double t_query) {
  if (!(t_query >= 0.0 && t_query <= 1.0)) {
    throw Error(ErrorCode::kInvalidTrajectory, "query time outside [0, 1]");
  }
  if (decoder.out_width() % 2 != 0) {
    throw Error(ErrorCode::kDimMismatch, "decoder output width must be even");
  }
  return SplitPrediction(MlpForward(decoder, DecoderInput(r, e, t_query)));
}

const MlpBlock& EncoderFor(const JointModel& model, Role role) {
  return role == Role::kForward ? model.enc_forward : model.enc_inverse;
}

const MlpBlock& DecoderFor(const JointModel& model, Role role) {
  return role == Role::kForward ? model.dec_forward : model.dec_inverse;
}

GeneratedTrajectory GenerateTrajectory(const JointModel& model,
                                       std::span<const ObservationPoint> obs,
                                       Role obs_role,
                                       const Eigen::VectorXd& psi,
                                       Role target_role,
                                       std::span<const double> query_times) {
  for (const ObservationPoint& o : obs) {
    if (o.y.size() != model.dims.d_y) {
      throw Error(ErrorCode::kDimMismatch, "observation width != d_y");
    }
  }
  if (psi.size() != model.dims.d_psi) {
    throw Error(ErrorCode::kDimMismatch, "task parameter width != d_psi");
  }
  const LatentRep r = Encode(EncoderFor(model, obs_role), obs);
  const TaskEmbedding e = EmbedTaskParam(model.embed_psi, psi);
  const MlpBlock& decoder = DecoderFor(model, target_role);

  const auto n = static_cast<Eigen::Index>(query_times.size());
  const Eigen::Index head = r.size() + e.size();
  Eigen::MatrixXd in(head + 1, n);
  for (Eigen::Index q = 0; q < n; ++q) {
    const double t = query_times[q];
    if (!(t >= 0.0 && t <= 1.0)) {
      throw Error(ErrorCode::kInvalidTrajectory, "query time outside [0, 1]");
    }
    in.block(0, q, r.size(), 1) = r;
    in.block(r.size(), q, e.size(), 1) = e;
    in(head, q) = t;
  }
  const Eigen::MatrixXd raw = MlpForward(decoder, in);

  const int d_y = model.dims.d_y;
  GeneratedTrajectory out;
  out.times.assign(query_times.begin(), query_times.end());
  out.mean.resize(n, d_y);
  out.std.resize(n, d_y);
  for (Eigen::Index q = 0; q < n; ++q) {
    for (int k = 0; k < d_y; ++k) {
      out.mean(q, k) = raw(k, q);
      out.std(q, k) = SoftplusStd(raw(d_y + k, q));
    }
  }
  return out;
}

std::vector<double> UniformGrid(int n) {
  if (n < 2) {
    throw Error(ErrorCode::kInvalidConfig, "query grid needs at least 2 points");
  }
  std::vector<double> grid(n);
  for (int k = 0; k < n; ++k) {
    grid[k] = static_cast<double>(k) / static_cast<double>(n - 1);
  }
  return grid;
}

std::string GeneratedTrajectoryCsv(const GeneratedTrajectory& traj) {
  const Eigen::Index d_y = traj.mean.cols();
  std::string out = "t";
  for (Eigen::Index k = 1; k <= d_y; ++k) out += ",mu_" + std::to_string(k);
  for (Eigen::Index k = 1; k <= d_y; ++k) out += ",sigma_" + std::to_string(k);
  out += '\n';
  for (size_t q = 0; q < traj.times.size(); ++q) {
    const auto row = static_cast<Eigen::Index>(q);
    out += FormatDouble(traj.times[q]);
    for (Eigen::Index k = 0; k < d_y; ++k) {
      out += ',' + FormatDouble(traj.mean(row, k));
    }
    for (Eigen::Index k = 0; k < d_y; ++k) {
      out += ',' + FormatDouble(traj.std(row, k));
    }
    out += '\n';
  }
  return out;
}

}  // namespace invskill
