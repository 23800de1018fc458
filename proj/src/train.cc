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

#include "invskill/train.h"

#include <string>

#if defined(__SSE__)
#include <xmmintrin.h>
#endif

#include "invskill/errors.h"

namespace invskill {

std::string_view PassKindName(PassKind kind) {
  return kind == PassKind::kPaired ? "paired" : "auxiliary";
}

std::vector<QueryPoint> SampleQueries(const Trajectory& traj, int count,
                                      Rng& rng) {
  std::vector<QueryPoint> queries;
  queries.reserve(count);
  const auto last = static_cast<int64_t>(traj.length()) - 1;
  for (int q = 0; q < count; ++q) {
    const auto idx = static_cast<Eigen::Index>(rng.UniformInt(0, last));
    queries.push_back({traj.times[idx], traj.values.row(idx).transpose()});
  }
  return queries;
}

std::vector<ObservationPoint> SampleObservations(const Trajectory& traj,
                                                 int obs_min, int obs_max,
                                                 Rng& rng) {
  if (obs_min < 1 || obs_max < obs_min) {
    throw Error(ErrorCode::kInvalidConfig, "need 1 <= obs_min <= obs_max");
  }
  if (traj.length() < static_cast<size_t>(obs_max)) {
    throw Error(ErrorCode::kInvalidTrajectory,
                "trajectory of length " + std::to_string(traj.length()) +
                    " is shorter than obs_max = " + std::to_string(obs_max));
  }
  const auto n = static_cast<size_t>(rng.UniformInt(obs_min, obs_max));
  const std::vector<size_t> idx =
      rng.SampleWithoutReplacement(traj.length(), n);
  std::vector<ObservationPoint> obs;
  obs.reserve(n);
  for (size_t i : idx) {
    const auto row = static_cast<Eigen::Index>(i);
    obs.push_back({traj.times[i], traj.values.row(row).transpose()});
  }
  return obs;
}

PairedSample DrawPairedSample(const DemoPair& pair, const TrainConfig& cfg,
                              Rng& rng) {
  PairedSample s;
  s.obs_forward = SampleObservations(pair.forward.trajectory, cfg.obs_min,
                                     cfg.obs_max, rng);
  s.obs_inverse = SampleObservations(pair.inverse.trajectory, cfg.obs_min,
                                     cfg.obs_max, rng);
  s.p = rng.Uniform();
  s.psi = pair.forward.task_param;
  s.query_forward = SampleQueries(pair.forward.trajectory, cfg.n_query, rng);
  s.query_inverse = SampleQueries(pair.inverse.trajectory, cfg.n_query, rng);
  return s;
}

AuxiliarySample DrawAuxiliarySample(const Demonstration& demo,
                                    const TrainConfig& cfg, Rng& rng) {
  if (demo.role != Role::kForward) {
    throw Error(ErrorCode::kRoleError,
                "auxiliary pass requires a forward demonstration");
  }
  AuxiliarySample s;
  s.obs = SampleObservations(demo.trajectory, cfg.obs_min, cfg.obs_max, rng);
  s.psi = demo.task_param;
  s.query = SampleQueries(demo.trajectory, cfg.n_query, rng);
  return s;
}

JointGrads JointGrads::ZerosLike(const JointModel& model) {
  return {MlpGrads::ZerosLike(model.enc_forward),
          MlpGrads::ZerosLike(model.enc_inverse),
          MlpGrads::ZerosLike(model.embed_psi),
          MlpGrads::ZerosLike(model.dec_forward),
          MlpGrads::ZerosLike(model.dec_inverse), true};
}

void JointGrads::SetZero() {
  enc_forward.SetZero();
  enc_inverse.SetZero();
  embed_psi.SetZero();
  dec_forward.SetZero();
  dec_inverse.SetZero();
  has_inverse = true;
}

JointGrads& JointGrads::operator*=(double scale) {
  enc_forward *= scale;
  enc_inverse *= scale;
  embed_psi *= scale;
  dec_forward *= scale;
  dec_inverse *= scale;
  return *this;
}

namespace {

// Flushes denormal results to zero on the calling thread while alive.
class ScopedFlushDenormals {
 public:
#if defined(__SSE__)
  ScopedFlushDenormals() : saved_(_mm_getcsr()) { _mm_setcsr(saved_ | 0x8040); }
  ~ScopedFlushDenormals() { _mm_setcsr(saved_); }

 private:
  unsigned int saved_;
#endif
};

// Encoder evaluation that keeps what backprop needs.
struct EncodedSet {
  MlpTape tape;
  LatentRep r;
  int count = 0;
};

EncodedSet EncodeTaped(const MlpBlock& encoder,
                       const std::vector<ObservationPoint>& obs) {
  if (obs.empty()) {
    throw Error(ErrorCode::kEmptyObservation, "cannot encode zero observations");
  }
  EncodedSet out;
  const std::vector<ObservationPoint> sorted = CanonicalOrder(obs);
  const Eigen::MatrixXd h =
      MlpForward(encoder, ObservationMatrix(sorted), &out.tape);
  // Same accumulation as Encode().
  out.r = h.col(0);
  for (Eigen::Index k = 1; k < h.cols(); ++k) out.r += h.col(k);
  out.r /= static_cast<double>(h.cols());
  out.count = static_cast<int>(h.cols());
  return out;
}

void BackpropEncoder(const MlpBlock& encoder, const EncodedSet& enc,
                     const Eigen::VectorXd& d_r, MlpGrads& grads) {
  const Eigen::VectorXd per_point = d_r / static_cast<double>(enc.count);
  const Eigen::MatrixXd d_h = per_point.replicate(1, enc.count);
  MlpBackward(encoder, enc.tape, d_h, grads);
}

struct DecodedQueries {
  MlpTape tape;
  Eigen::MatrixXd raw;  // 2 d_y x n_query
};

DecodedQueries DecodeTaped(const MlpBlock& decoder, const LatentRep& r,
                           const TaskEmbedding& e,
                           const std::vector<QueryPoint>& queries) {
  const auto n = static_cast<Eigen::Index>(queries.size());
  const Eigen::Index head = r.size() + e.size();
  Eigen::MatrixXd in(head + 1, n);
  for (Eigen::Index q = 0; q < n; ++q) {
    in.block(0, q, r.size(), 1) = r;
    in.block(r.size(), q, e.size(), 1) = e;
    in(head, q) = queries[q].t;
  }
  DecodedQueries out;
  out.raw = MlpForward(decoder, in, &out.tape);
  return out;
}

// Mean NLL over the queries; fills dL/d(raw output) when `d_raw` is non-null.
double QueryNll(const DecodedQueries& dec,
                const std::vector<QueryPoint>& queries,
                Eigen::MatrixXd* d_raw) {
  const auto n = static_cast<Eigen::Index>(queries.size());
  const Eigen::Index d_y = dec.raw.rows() / 2;
  if (d_raw != nullptr) d_raw->resize(dec.raw.rows(), n);
  double total = 0.0;
  NllGrad g;
  for (Eigen::Index q = 0; q < n; ++q) {
    const Eigen::VectorXd raw = dec.raw.col(q);
    const GaussianPrediction pred = SplitPrediction(raw);
    total += GaussianNll(pred, queries[q].target,
                         d_raw != nullptr ? &g : nullptr);
    if (d_raw != nullptr) {
      for (Eigen::Index k = 0; k < d_y; ++k) {
        (*d_raw)(k, q) = g.d_mean[k] / static_cast<double>(n);
        (*d_raw)(d_y + k, q) =
            g.d_std[k] * SoftplusStdGrad(raw[d_y + k]) / static_cast<double>(n);
      }
    }
  }
  return total / static_cast<double>(n);
}

// Backprop through a decoder; adds dL/dr and dL/de into the accumulators.
void BackpropDecoder(const MlpBlock& decoder, const DecodedQueries& dec,
                     const Eigen::MatrixXd& d_raw, MlpGrads& grads,
                     Eigen::VectorXd& d_r, Eigen::VectorXd& d_e) {
  Eigen::MatrixXd d_in;
  MlpBackward(decoder, dec.tape, d_raw, grads, &d_in);
  const Eigen::VectorXd row_sum = d_in.rowwise().sum();
  d_r += row_sum.head(d_r.size());
  d_e += row_sum.segment(d_r.size(), d_e.size());
}

void CheckQueries(const std::vector<QueryPoint>& queries) {
  if (queries.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "pass needs at least one query");
  }
}

}  // namespace

double PairedLoss(const JointModel& model, const PairedSample& sample) {
  CheckQueries(sample.query_forward);
  CheckQueries(sample.query_inverse);
  const LatentRep r =
      Blend(Encode(model.enc_forward, sample.obs_forward),
            Encode(model.enc_inverse, sample.obs_inverse), sample.p);
  const TaskEmbedding e = EmbedTaskParam(model.embed_psi, sample.psi);
  const double nll_f = QueryNll(
      DecodeTaped(model.dec_forward, r, e, sample.query_forward),
      sample.query_forward, nullptr);
  const double nll_i = QueryNll(
      DecodeTaped(model.dec_inverse, r, e, sample.query_inverse),
      sample.query_inverse, nullptr);
  return nll_f + nll_i;
}

double AccumulatePairedPass(const JointModel& model, const PairedSample& sample,
                            double weight, JointGrads& grads) {
  CheckQueries(sample.query_forward);
  CheckQueries(sample.query_inverse);
  const EncodedSet enc_f = EncodeTaped(model.enc_forward, sample.obs_forward);
  const EncodedSet enc_i = EncodeTaped(model.enc_inverse, sample.obs_inverse);
  const LatentRep r = Blend(enc_f.r, enc_i.r, sample.p);

  MlpTape embed_tape;
  const Eigen::MatrixXd e_mat =
      MlpForward(model.embed_psi, Eigen::MatrixXd(sample.psi), &embed_tape);
  const TaskEmbedding e = e_mat.col(0);

  const DecodedQueries dec_f =
      DecodeTaped(model.dec_forward, r, e, sample.query_forward);
  const DecodedQueries dec_i =
      DecodeTaped(model.dec_inverse, r, e, sample.query_inverse);
  Eigen::MatrixXd d_raw_f, d_raw_i;
  const double loss = QueryNll(dec_f, sample.query_forward, &d_raw_f) +
                      QueryNll(dec_i, sample.query_inverse, &d_raw_i);
  d_raw_f *= weight;
  d_raw_i *= weight;

  Eigen::VectorXd d_r = Eigen::VectorXd::Zero(r.size());
  Eigen::VectorXd d_e = Eigen::VectorXd::Zero(e.size());
  BackpropDecoder(model.dec_forward, dec_f, d_raw_f, grads.dec_forward, d_r,
                  d_e);
  BackpropDecoder(model.dec_inverse, dec_i, d_raw_i, grads.dec_inverse, d_r,
                  d_e);
  BackpropEncoder(model.enc_forward, enc_f, sample.p * d_r, grads.enc_forward);
  BackpropEncoder(model.enc_inverse, enc_i, (1.0 - sample.p) * d_r,
                  grads.enc_inverse);
  MlpBackward(model.embed_psi, embed_tape, d_e, grads.embed_psi);
  return loss;
}

PassResult PairedPass(const JointModel& model, const PairedSample& sample) {
  PassResult result{0.0, JointGrads::ZerosLike(model)};
  result.loss = AccumulatePairedPass(model, sample, 1.0, result.grads);
  return result;
}

PassResult PairedPass(const JointModel& model, const DemoPair& pair,
                      const TrainConfig& cfg, Rng& rng) {
  return PairedPass(model, DrawPairedSample(pair, cfg, rng));
}

double AuxiliaryLoss(const JointModel& model, const AuxiliarySample& sample) {
  CheckQueries(sample.query);
  const LatentRep r = Encode(model.enc_forward, sample.obs);
  const TaskEmbedding e = EmbedTaskParam(model.embed_psi, sample.psi);
  return QueryNll(DecodeTaped(model.dec_forward, r, e, sample.query),
                  sample.query, nullptr);
}

double AccumulateAuxiliaryPass(const JointModel& model,
                               const AuxiliarySample& sample, double weight,
                               JointGrads& grads) {
  CheckQueries(sample.query);
  const EncodedSet enc_f = EncodeTaped(model.enc_forward, sample.obs);
  MlpTape embed_tape;
  const Eigen::MatrixXd e_mat =
      MlpForward(model.embed_psi, Eigen::MatrixXd(sample.psi), &embed_tape);
  const TaskEmbedding e = e_mat.col(0);
  const DecodedQueries dec_f =
      DecodeTaped(model.dec_forward, enc_f.r, e, sample.query);
  Eigen::MatrixXd d_raw;
  const double loss = QueryNll(dec_f, sample.query, &d_raw);
  d_raw *= weight;

  Eigen::VectorXd d_r = Eigen::VectorXd::Zero(enc_f.r.size());
  Eigen::VectorXd d_e = Eigen::VectorXd::Zero(e.size());
  BackpropDecoder(model.dec_forward, dec_f, d_raw, grads.dec_forward, d_r, d_e);
  BackpropEncoder(model.enc_forward, enc_f, d_r, grads.enc_forward);
  MlpBackward(model.embed_psi, embed_tape, d_e, grads.embed_psi);
  grads.has_inverse = false;
  return loss;
}

PassResult AuxiliaryPass(const JointModel& model,
                         const AuxiliarySample& sample) {
  PassResult result{0.0, JointGrads::ZerosLike(model)};
  result.loss = AccumulateAuxiliaryPass(model, sample, 1.0, result.grads);
  return result;
}

PassResult AuxiliaryPass(const JointModel& model, const Demonstration& demo,
                         const TrainConfig& cfg, Rng& rng) {
  return AuxiliaryPass(model, DrawAuxiliarySample(demo, cfg, rng));
}

JointOptimizer JointOptimizer::For(const JointModel& model,
                                   const TrainConfig& cfg) {
  auto make = [&cfg](const MlpBlock& block) {
    return MakeAdamWState(block.num_params(), cfg.lr, cfg.weight_decay);
  };
  return {make(model.enc_forward), make(model.enc_inverse),
          make(model.embed_psi), make(model.dec_forward),
          make(model.dec_inverse)};
}

void JointOptimizer::Step(JointModel& model, const JointGrads& grads) {
  AdamWStep(model.enc_forward, grads.enc_forward, enc_forward);
  AdamWStep(model.embed_psi, grads.embed_psi, embed_psi);
  AdamWStep(model.dec_forward, grads.dec_forward, dec_forward);
  if (grads.has_inverse) {
    AdamWStep(model.enc_inverse, grads.enc_inverse, enc_inverse);
    AdamWStep(model.dec_inverse, grads.dec_inverse, dec_inverse);
  }
}

int TrainLog::CountKind(PassKind kind) const {
  int n = 0;
  for (const StepRecord& r : records) n += (r.kind == kind);
  return n;
}

std::string TrainLog::ToCsv() const {
  std::string out = "step,pass,loss\n";
  for (const StepRecord& r : records) {
    out += std::to_string(r.step);
    out += ',';
    out += PassKindName(r.kind);
    out += ',';
    out += FormatDouble(r.loss);
    out += '\n';
  }
  return out;
}

TrainResult Train(JointModel model, const PairedDataset& paired,
                  const AuxiliaryDataset& aux, const TrainConfig& cfg,
                  const StepCallback& on_step) {
  const ScopedFlushDenormals flush_denormals;
  ValidateTrainConfig(cfg);
  ValidateJointModel(model);
  if (paired.pairs.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "paired dataset is empty");
  }
  for (const Demonstration& d : aux.demos) {
    if (d.role != Role::kForward) {
      throw Error(ErrorCode::kRoleError,
                  "auxiliary set contains an inverse demonstration");
    }
  }
  const double p_aux = aux.demos.empty() ? 0.0 : cfg.p_aux;

  Rng rng(cfg.seed);
  JointOptimizer optimizer = JointOptimizer::For(model, cfg);
  JointGrads grads = JointGrads::ZerosLike(model);
  TrainLog log;
  log.effective_p_aux = p_aux;
  log.records.reserve(cfg.steps);
  const double weight = 1.0 / cfg.batch_size;
  const auto last_pair = static_cast<int64_t>(paired.pairs.size()) - 1;
  const auto last_aux = static_cast<int64_t>(aux.demos.size()) - 1;

  for (int step = 1; step <= cfg.steps; ++step) {
    grads.SetZero();
    const bool auxiliary = rng.Uniform() < p_aux;
    double loss = 0.0;
    for (int b = 0; b < cfg.batch_size; ++b) {
      if (auxiliary) {
        const Demonstration& demo = aux.demos[rng.UniformInt(0, last_aux)];
        loss += AccumulateAuxiliaryPass(
            model, DrawAuxiliarySample(demo, cfg, rng), weight, grads);
      } else {
        const DemoPair& pair = paired.pairs[rng.UniformInt(0, last_pair)];
        loss += AccumulatePairedPass(model, DrawPairedSample(pair, cfg, rng),
                                     weight, grads);
      }
    }
    optimizer.Step(model, grads);
    const StepRecord record{
        step, auxiliary ? PassKind::kAuxiliary : PassKind::kPaired,
        loss * weight};
    log.records.push_back(record);
    if (on_step) on_step(record, model);
  }
  log.final_checksum = ModelChecksum(model);
  return {std::move(model), std::move(log)};
}

uint64_t ModelChecksum(const JointModel& model) {
  uint64_t h = 0;
  for (const MlpBlock* block :
       {&model.enc_forward, &model.enc_inverse, &model.embed_psi,
        &model.dec_forward, &model.dec_inverse}) {
    h = SplitMix64(h ^ ParamChecksum(*block));
  }
  return h;
}

}  // namespace invskill
