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

#ifndef INVSKILL_CORE_H_
#define INVSKILL_CORE_H_

// Domain types shared by every stage of the pipeline and the on-disk formats
// for demonstrations, paired datasets, and model checkpoints.
//
// All files are text. Floating-point values are written with 17 significant
// digits, which round-trips IEEE-754 doubles exactly.

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "invskill/nnet.h"

namespace invskill {

enum class Role { kForward, kInverse };

std::string_view RoleName(Role role);
// Accepts "forward" / "inverse"; throws kParseError otherwise.
Role ParseRole(std::string_view name);

// Time-indexed sensorimotor readings. Times are normalized: they start at
// exactly 0, end at exactly 1, and strictly increase. values is T x d_y.
struct Trajectory {
  std::vector<double> times;
  Eigen::MatrixXd values;

  size_t length() const { return times.size(); }
  int dim() const { return static_cast<int>(values.cols()); }
};

// Throws kInvalidTrajectory when `traj` violates the invariants above.
void ValidateTrajectory(const Trajectory& traj);

// Affine map of strictly increasing raw timestamps onto [0, 1].
std::vector<double> NormalizeTime(std::span<const double> raw_times);

struct Demonstration {
  Trajectory trajectory;
  Eigen::VectorXd task_param;
  Eigen::VectorXd s_init;
  Eigen::VectorXd s_final;
  Role role = Role::kForward;
};

void ValidateDemonstration(const Demonstration& demo);

struct DemoPair {
  Demonstration forward;
  Demonstration inverse;
  double cost = 0.0;  // dissimilarity of forward.s_final and inverse.s_init
};

struct PairedDataset {
  std::vector<DemoPair> pairs;
  double pairing_cost = 0.0;
};

// Forward-only demonstrations without inverse counterparts.
struct AuxiliaryDataset {
  std::vector<Demonstration> demos;
};

// Throws kRoleError if any demonstration is not a forward one.
AuxiliaryDataset MakeAuxiliaryDataset(std::vector<Demonstration> demos);

// Dataset-wide widths, written to file headers.
struct DatasetDims {
  int d_y = 0;
  int d_psi = 0;
  int d_s = 0;
};

// Throws kDimMismatch unless every demonstration shares the same widths.
DatasetDims CheckDatasetDims(std::span<const Demonstration> demos);

struct TrainConfig {
  double lr = 5e-4;
  double weight_decay = 1e-3;
  int batch_size = 4;
  int steps = 60000;
  double p_aux = 0.2;
  int obs_min = 1;
  int obs_max = 15;
  int n_query = 1;
  uint64_t seed = 0;
  int log_every = 0;
};

// Throws kInvalidConfig when a field is out of range.
void ValidateTrainConfig(const TrainConfig& cfg);

struct ModelDims {
  int d_y = 1;
  int d_psi = 1;
  int d_r = 128;  // latent width
  int d_e = 16;   // task embedding width
};

// The five networks of the joint forward/inverse model.
//   encoders: (1 + d_y) -> d_r      embedder: d_psi -> d_e
//   decoders: (d_r + d_e + 1) -> 2 d_y (mean, then pre-std)
struct JointModel {
  ModelDims dims;
  MlpBlock enc_forward;
  MlpBlock enc_inverse;
  MlpBlock embed_psi;
  MlpBlock dec_forward;
  MlpBlock dec_inverse;
  // Metadata carried in checkpoints.
  TrainConfig train_config;
  uint64_t rng_seed = 0;

  size_t num_params() const;
};

// Throws kDimMismatch when a block's widths disagree with `dims`.
void ValidateJointModel(const JointModel& model);

// ---- Serialization ---------------------------------------------------------

// 17 significant digits, always with a decimal point or exponent so the text
// parses back as a double. Throws kInvalidConfig for non-finite input.
std::string FormatDouble(double x);

// Line-delimited demonstration file: a header object, then one record per
// line. Records keep file order. An empty file yields an empty list.
std::vector<Demonstration> LoadDemos(const std::filesystem::path& path);
void SaveDemos(std::span<const Demonstration> demos,
               const std::filesystem::path& path);

// Same layout with one pair per line, including its cost.
PairedDataset LoadPaired(const std::filesystem::path& path);
void SavePaired(const PairedDataset& paired,
                const std::filesystem::path& path);

JointModel LoadModel(const std::filesystem::path& path);
void SaveModel(const JointModel& model, const std::filesystem::path& path);

// In-memory forms of the above, used by the file functions.
std::string DemoRecordJson(const Demonstration& demo);
std::string ModelJson(const JointModel& model);
JointModel ParseModelJson(std::string_view text);
std::string TrainConfigJson(const TrainConfig& cfg);

// Overlays the fields present in the JSON object `text` onto `cfg`. Keys that
// are not TrainConfig fields are appended to `unknown` when it is non-null.
void OverlayTrainConfig(std::string_view text, TrainConfig& cfg,
                        std::vector<std::string>* unknown = nullptr);

// Reads the whole file; throws kIoError on failure.
std::string ReadFile(const std::filesystem::path& path);
// Creates or truncates `path`; throws kIoError on failure.
void WriteFile(const std::filesystem::path& path, std::string_view contents);

}  // namespace invskill

#endif  // INVSKILL_CORE_H_
