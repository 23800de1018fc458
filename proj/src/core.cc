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

#include "invskill/core.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "invskill/errors.h"
#include "json.hpp"

namespace invskill {

using nlohmann::json;

std::string_view RoleName(Role role) {
  return role == Role::kForward ? "forward" : "inverse";
}

Role ParseRole(std::string_view name) {
  if (name == "forward") return Role::kForward;
  if (name == "inverse") return Role::kInverse;
  throw Error(ErrorCode::kParseError,
              "unknown role '" + std::string(name) + "'");
}

void ValidateTrajectory(const Trajectory& traj) {
  const size_t n = traj.times.size();
  if (n < 2) {
    throw Error(ErrorCode::kInvalidTrajectory,
                "trajectory needs at least 2 samples, got " + std::to_string(n));
  }
  if (static_cast<size_t>(traj.values.rows()) != n) {
    throw Error(ErrorCode::kInvalidTrajectory,
                "times has " + std::to_string(n) + " entries but values has " +
                    std::to_string(traj.values.rows()) + " rows");
  }
  if (traj.values.cols() < 1) {
    throw Error(ErrorCode::kInvalidTrajectory, "values have zero width");
  }
  if (traj.times.front() != 0.0 || traj.times.back() != 1.0) {
    throw Error(ErrorCode::kInvalidTrajectory,
                "times must start at 0 and end at 1");
  }
  for (size_t i = 1; i < n; ++i) {
    if (!(traj.times[i] > traj.times[i - 1])) {
      throw Error(ErrorCode::kInvalidTrajectory,
                  "times not strictly increasing at index " + std::to_string(i));
    }
  }
  if (!traj.values.allFinite()) {
    throw Error(ErrorCode::kInvalidTrajectory, "values must be finite");
  }
}

std::vector<double> NormalizeTime(std::span<const double> raw_times) {
  const size_t n = raw_times.size();
  if (n < 2) {
    throw Error(ErrorCode::kInvalidTrajectory,
                "need at least 2 timestamps to normalize");
  }
  for (size_t i = 1; i < n; ++i) {
    if (!(raw_times[i] > raw_times[i - 1])) {
      throw Error(ErrorCode::kInvalidTrajectory,
                  "timestamps not strictly increasing at index " +
                      std::to_string(i));
    }
  }
  const double t0 = raw_times.front();
  const double span = raw_times.back() - t0;
  std::vector<double> out(n);
  for (size_t i = 0; i < n; ++i) out[i] = (raw_times[i] - t0) / span;
  out.front() = 0.0;
  out.back() = 1.0;
  return out;
}

void ValidateDemonstration(const Demonstration& demo) {
  ValidateTrajectory(demo.trajectory);
  if (demo.s_init.size() != demo.s_final.size()) {
    throw Error(ErrorCode::kInvalidTrajectory,
                "s_init and s_final widths differ");
  }
  if (!demo.task_param.allFinite() || !demo.s_init.allFinite() ||
      !demo.s_final.allFinite()) {
    throw Error(ErrorCode::kInvalidTrajectory,
                "task parameter and states must be finite");
  }
}

AuxiliaryDataset MakeAuxiliaryDataset(std::vector<Demonstration> demos) {
  for (size_t i = 0; i < demos.size(); ++i) {
    if (demos[i].role != Role::kForward) {
      throw Error(ErrorCode::kRoleError,
                  "auxiliary demonstration " + std::to_string(i) +
                      " is not a forward demonstration");
    }
  }
  return AuxiliaryDataset{std::move(demos)};
}

DatasetDims CheckDatasetDims(std::span<const Demonstration> demos) {
  DatasetDims dims;
  if (demos.empty()) return dims;
  dims.d_y = demos[0].trajectory.dim();
  dims.d_psi = static_cast<int>(demos[0].task_param.size());
  dims.d_s = static_cast<int>(demos[0].s_init.size());
  for (size_t i = 0; i < demos.size(); ++i) {
    const Demonstration& d = demos[i];
    if (d.trajectory.dim() != dims.d_y ||
        d.task_param.size() != dims.d_psi || d.s_init.size() != dims.d_s ||
        d.s_final.size() != dims.d_s) {
      throw Error(ErrorCode::kDimMismatch,
                  "demonstration " + std::to_string(i) +
                      " widths differ from the first demonstration");
    }
  }
  return dims;
}

void ValidateTrainConfig(const TrainConfig& cfg) {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidConfig, what);
  };
  if (!(cfg.lr > 0.0) || !std::isfinite(cfg.lr)) fail("lr must be positive");
  if (!(cfg.weight_decay >= 0.0) || !std::isfinite(cfg.weight_decay)) {
    fail("weight_decay must be nonnegative");
  }
  if (cfg.batch_size < 1) fail("batch_size must be >= 1");
  if (cfg.steps < 1) fail("steps must be >= 1");
  if (!(cfg.p_aux >= 0.0 && cfg.p_aux <= 1.0)) fail("p_aux must be in [0, 1]");
  if (cfg.obs_min < 1 || cfg.obs_max < cfg.obs_min) {
    fail("need 1 <= obs_min <= obs_max");
  }
  if (cfg.n_query < 1) fail("n_query must be >= 1");
  if (cfg.log_every < 0) fail("log_every must be >= 0");
}

size_t JointModel::num_params() const {
  return enc_forward.num_params() + enc_inverse.num_params() +
         embed_psi.num_params() + dec_forward.num_params() +
         dec_inverse.num_params();
}

void ValidateJointModel(const JointModel& model) {
  const ModelDims& d = model.dims;
  auto check = [](const MlpBlock& block, std::string_view name, int in,
                  int out) {
    ValidateMlp(block);
    if (block.in_width() != in || block.out_width() != out) {
      throw Error(ErrorCode::kDimMismatch,
                  std::string(name) + " is " +
                      std::to_string(block.in_width()) + "->" +
                      std::to_string(block.out_width()) + ", expected " +
                      std::to_string(in) + "->" + std::to_string(out));
    }
  };
  check(model.enc_forward, "E_F", 1 + d.d_y, d.d_r);
  check(model.enc_inverse, "E_I", 1 + d.d_y, d.d_r);
  check(model.embed_psi, "E_psi", d.d_psi, d.d_e);
  check(model.dec_forward, "D_F", d.d_r + d.d_e + 1, 2 * d.d_y);
  check(model.dec_inverse, "D_I", d.d_r + d.d_e + 1, 2 * d.d_y);
}

// ---- Text encoding ----------------------------------------------------------

std::string FormatDouble(double x) {
  if (!std::isfinite(x)) {
    throw Error(ErrorCode::kInvalidConfig, "cannot serialize non-finite value");
  }
  char buf[64];
  auto [end, ec] =
      std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  std::string s(buf, end);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

namespace {

void AppendArray(std::string& out, const double* data, Eigen::Index n,
                 Eigen::Index stride = 1) {
  out += '[';
  for (Eigen::Index i = 0; i < n; ++i) {
    if (i > 0) out += ',';
    out += FormatDouble(data[i * stride]);
  }
  out += ']';
}

void AppendVector(std::string& out, const Eigen::VectorXd& v) {
  AppendArray(out, v.data(), v.size());
}

void AppendVector(std::string& out, const std::vector<double>& v) {
  AppendArray(out, v.data(), static_cast<Eigen::Index>(v.size()));
}

// Row-major nested array.
void AppendMatrix(std::string& out, const Eigen::MatrixXd& m) {
  out += '[';
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    if (r > 0) out += ',';
    AppendArray(out, m.data() + r, m.cols(), m.rows());
  }
  out += ']';
}

std::string DemosHeaderJson(std::string_view format, const DatasetDims& dims,
                            const std::string& extra = "") {
  std::string s = "{\"format\":\"" + std::string(format) +
                  "\",\"version\":1,\"d_y\":" + std::to_string(dims.d_y) +
                  ",\"d_psi\":" + std::to_string(dims.d_psi) +
                  ",\"d_s\":" + std::to_string(dims.d_s);
  s += extra;
  s += '}';
  return s;
}

[[noreturn]] void ParseFail(const std::string& what, int line) {
  throw Error(ErrorCode::kParseError,
              (line > 0 ? "line " + std::to_string(line) + ": " : "") + what,
              line);
}

const json& Field(const json& obj, const char* key, int line) {
  if (!obj.is_object()) ParseFail("expected a JSON object", line);
  auto it = obj.find(key);
  if (it == obj.end()) ParseFail(std::string("missing field '") + key + "'", line);
  return *it;
}

double ToDouble(const json& j, int line) {
  if (!j.is_number()) ParseFail("expected a number", line);
  return j.get<double>();
}

int ToInt(const json& j, int line) {
  if (!j.is_number_integer()) ParseFail("expected an integer", line);
  return j.get<int>();
}

Eigen::VectorXd ToVector(const json& j, int line) {
  if (!j.is_array()) ParseFail("expected a number array", line);
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = ToDouble(j[i], line);
  }
  return v;
}

Eigen::MatrixXd ToMatrix(const json& j, int line) {
  if (!j.is_array() || j.empty()) ParseFail("expected a nonempty matrix", line);
  const size_t rows = j.size();
  if (!j[0].is_array()) ParseFail("expected an array of rows", line);
  const size_t cols = j[0].size();
  Eigen::MatrixXd m(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) {
      ParseFail("ragged matrix row " + std::to_string(r), line);
    }
    for (size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          ToDouble(j[r][c], line);
    }
  }
  return m;
}

json ParseJson(std::string_view text, int line) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    ParseFail(std::string("malformed JSON: ") + e.what(), line);
  }
}

Demonstration DemoFromJson(const json& rec, int line) {
  Demonstration demo;
  const json& role = Field(rec, "role", line);
  if (!role.is_string()) ParseFail("role must be a string", line);
  try {
    demo.role = ParseRole(role.get<std::string>());
  } catch (const Error& e) {
    ParseFail(e.what(), line);
  }
  demo.task_param = ToVector(Field(rec, "psi", line), line);
  demo.s_init = ToVector(Field(rec, "s_init", line), line);
  demo.s_final = ToVector(Field(rec, "s_final", line), line);
  const Eigen::VectorXd t = ToVector(Field(rec, "t", line), line);
  demo.trajectory.times.assign(t.data(), t.data() + t.size());
  const json& y = Field(rec, "y", line);
  if (!y.is_array() || y.size() != demo.trajectory.times.size()) {
    ParseFail("'y' must have one row per timestamp", line);
  }
  demo.trajectory.values = ToMatrix(y, line);
  try {
    ValidateDemonstration(demo);
  } catch (const Error& e) {
    const std::string what = e.what();
    const size_t prefix = ErrorCodeName(e.code()).size() + 2;
    throw Error(e.code(),
                (line > 0 ? "line " + std::to_string(line) + ": " : "") +
                    what.substr(prefix),
                line);
  }
  return demo;
}

void CheckDims(const Demonstration& demo, const DatasetDims& dims, int line) {
  if (demo.trajectory.dim() != dims.d_y ||
      demo.task_param.size() != dims.d_psi || demo.s_init.size() != dims.d_s) {
    ParseFail("record widths disagree with the file header", line);
  }
}

DatasetDims DimsFromHeader(const json& header, std::string_view format,
                           int line) {
  const json& f = Field(header, "format", line);
  if (!f.is_string() || f.get<std::string>() != format) {
    ParseFail("expected format '" + std::string(format) + "'", line);
  }
  if (ToInt(Field(header, "version", line), line) != 1) {
    ParseFail("unsupported version", line);
  }
  DatasetDims dims;
  dims.d_y = ToInt(Field(header, "d_y", line), line);
  dims.d_psi = ToInt(Field(header, "d_psi", line), line);
  dims.d_s = ToInt(Field(header, "d_s", line), line);
  return dims;
}

std::vector<std::string> SplitLines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

bool IsBlank(const std::string& s) {
  return s.find_first_not_of(" \t") == std::string::npos;
}

}  // namespace

std::string DemoRecordJson(const Demonstration& demo) {
  std::string s = "{\"role\":\"";
  s += RoleName(demo.role);
  s += "\",\"psi\":";
  AppendVector(s, demo.task_param);
  s += ",\"s_init\":";
  AppendVector(s, demo.s_init);
  s += ",\"s_final\":";
  AppendVector(s, demo.s_final);
  s += ",\"t\":";
  AppendVector(s, demo.trajectory.times);
  s += ",\"y\":";
  AppendMatrix(s, demo.trajectory.values);
  s += '}';
  return s;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIoError, "read failed: " + path.string());
  return ss.str();
}

void WriteFile(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIoError, "cannot open for writing: " + path.string());
  }
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.flush();
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path.string());
}

std::vector<Demonstration> LoadDemos(const std::filesystem::path& path) {
  const std::vector<std::string> lines = SplitLines(ReadFile(path));
  std::vector<Demonstration> demos;
  DatasetDims dims;
  bool have_header = false;
  for (size_t i = 0; i < lines.size(); ++i) {
    const int line_no = static_cast<int>(i) + 1;
    if (IsBlank(lines[i])) continue;
    const json obj = ParseJson(lines[i], line_no);
    if (!have_header && demos.empty() && obj.is_object() &&
        obj.contains("format")) {
      dims = DimsFromHeader(obj, "invskill-demos", line_no);
      have_header = true;
      continue;
    }
    Demonstration demo = DemoFromJson(obj, line_no);
    if (!have_header && demos.empty()) {
      dims = {demo.trajectory.dim(), static_cast<int>(demo.task_param.size()),
              static_cast<int>(demo.s_init.size())};
    }
    CheckDims(demo, dims, line_no);
    demos.push_back(std::move(demo));
  }
  return demos;
}

void SaveDemos(std::span<const Demonstration> demos,
               const std::filesystem::path& path) {
  const DatasetDims dims = CheckDatasetDims(demos);
  std::string out = DemosHeaderJson("invskill-demos", dims);
  out += '\n';
  for (const Demonstration& d : demos) {
    out += DemoRecordJson(d);
    out += '\n';
  }
  WriteFile(path, out);
}

PairedDataset LoadPaired(const std::filesystem::path& path) {
  const std::vector<std::string> lines = SplitLines(ReadFile(path));
  PairedDataset paired;
  DatasetDims dims;
  bool have_header = false;
  for (size_t i = 0; i < lines.size(); ++i) {
    const int line_no = static_cast<int>(i) + 1;
    if (IsBlank(lines[i])) continue;
    const json obj = ParseJson(lines[i], line_no);
    if (!have_header) {
      dims = DimsFromHeader(obj, "invskill-paired", line_no);
      paired.pairing_cost = ToDouble(Field(obj, "pairing_cost", line_no), line_no);
      have_header = true;
      continue;
    }
    DemoPair pair;
    pair.cost = ToDouble(Field(obj, "cost", line_no), line_no);
    pair.forward = DemoFromJson(Field(obj, "forward", line_no), line_no);
    pair.inverse = DemoFromJson(Field(obj, "inverse", line_no), line_no);
    if (pair.forward.role != Role::kForward ||
        pair.inverse.role != Role::kInverse) {
      ParseFail("pair roles must be forward then inverse", line_no);
    }
    CheckDims(pair.forward, dims, line_no);
    CheckDims(pair.inverse, dims, line_no);
    paired.pairs.push_back(std::move(pair));
  }
  if (!have_header) ParseFail("paired file has no header", 1);
  return paired;
}

void SavePaired(const PairedDataset& paired,
                const std::filesystem::path& path) {
  std::vector<Demonstration> all;
  all.reserve(paired.pairs.size() * 2);
  for (const DemoPair& p : paired.pairs) {
    all.push_back(p.forward);
    all.push_back(p.inverse);
  }
  const DatasetDims dims = CheckDatasetDims(all);
  std::string out = DemosHeaderJson(
      "invskill-paired", dims,
      ",\"pairing_cost\":" + FormatDouble(paired.pairing_cost));
  out += '\n';
  for (size_t i = 0; i < paired.pairs.size(); ++i) {
    const DemoPair& p = paired.pairs[i];
    out += "{\"index\":" + std::to_string(i) +
           ",\"cost\":" + FormatDouble(p.cost) + ",\"forward\":";
    out += DemoRecordJson(p.forward);
    out += ",\"inverse\":";
    out += DemoRecordJson(p.inverse);
    out += "}\n";
  }
  WriteFile(path, out);
}

// ---- Model checkpoints -------------------------------------------------------

std::string TrainConfigJson(const TrainConfig& cfg) {
  std::string s = "{";
  s += "\"lr\":" + FormatDouble(cfg.lr);
  s += ",\"weight_decay\":" + FormatDouble(cfg.weight_decay);
  s += ",\"batch_size\":" + std::to_string(cfg.batch_size);
  s += ",\"steps\":" + std::to_string(cfg.steps);
  s += ",\"p_aux\":" + FormatDouble(cfg.p_aux);
  s += ",\"obs_min\":" + std::to_string(cfg.obs_min);
  s += ",\"obs_max\":" + std::to_string(cfg.obs_max);
  s += ",\"n_query\":" + std::to_string(cfg.n_query);
  s += ",\"seed\":" + std::to_string(cfg.seed);
  s += ",\"log_every\":" + std::to_string(cfg.log_every);
  s += '}';
  return s;
}

namespace {

void OverlayTrainConfigJson(const json& obj, TrainConfig& cfg,
                            std::vector<std::string>* unknown, int line) {
  if (!obj.is_object()) ParseFail("train config must be an object", line);
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const std::string& key = it.key();
    const json& v = it.value();
    if (key == "lr") {
      cfg.lr = ToDouble(v, line);
    } else if (key == "weight_decay") {
      cfg.weight_decay = ToDouble(v, line);
    } else if (key == "batch_size") {
      cfg.batch_size = ToInt(v, line);
    } else if (key == "steps") {
      cfg.steps = ToInt(v, line);
    } else if (key == "p_aux") {
      cfg.p_aux = ToDouble(v, line);
    } else if (key == "obs_min") {
      cfg.obs_min = ToInt(v, line);
    } else if (key == "obs_max") {
      cfg.obs_max = ToInt(v, line);
    } else if (key == "n_query") {
      cfg.n_query = ToInt(v, line);
    } else if (key == "seed") {
      if (!v.is_number_unsigned() && !v.is_number_integer()) {
        ParseFail("seed must be an integer", line);
      }
      cfg.seed = v.get<uint64_t>();
    } else if (key == "log_every") {
      cfg.log_every = ToInt(v, line);
    } else if (unknown != nullptr) {
      unknown->push_back(key);
    }
  }
}

void AppendBlock(std::string& out, const MlpBlock& block) {
  out += '[';
  for (size_t l = 0; l < block.layers.size(); ++l) {
    if (l > 0) out += ',';
    out += "{\"W\":";
    AppendMatrix(out, block.layers[l].W);
    out += ",\"b\":";
    AppendVector(out, block.layers[l].b);
    out += '}';
  }
  out += ']';
}

MlpBlock BlockFromJson(const json& j) {
  if (!j.is_array() || j.empty()) ParseFail("block must be a nonempty array", 0);
  MlpBlock block;
  for (size_t l = 0; l < j.size(); ++l) {
    DenseLayer layer;
    layer.W = ToMatrix(Field(j[l], "W", 0), 0);
    layer.b = ToVector(Field(j[l], "b", 0), 0);
    layer.activation =
        (l + 1 == j.size()) ? Activation::kIdentity : Activation::kReLU;
    block.layers.push_back(std::move(layer));
  }
  try {
    ValidateMlp(block);
  } catch (const Error& e) {
    ParseFail(e.what(), 0);
  }
  return block;
}

}  // namespace

void OverlayTrainConfig(std::string_view text, TrainConfig& cfg,
                        std::vector<std::string>* unknown) {
  OverlayTrainConfigJson(ParseJson(text, 0), cfg, unknown, 0);
}

std::string ModelJson(const JointModel& model) {
  const ModelDims& d = model.dims;
  std::string s = "{\"format\":\"invskill-model\",\"version\":1,\"dims\":{";
  s += "\"d_y\":" + std::to_string(d.d_y);
  s += ",\"d_psi\":" + std::to_string(d.d_psi);
  s += ",\"d_r\":" + std::to_string(d.d_r);
  s += ",\"d_e\":" + std::to_string(d.d_e);
  s += "},\"blocks\":{\"E_F\":";
  AppendBlock(s, model.enc_forward);
  s += ",\"E_I\":";
  AppendBlock(s, model.enc_inverse);
  s += ",\"E_psi\":";
  AppendBlock(s, model.embed_psi);
  s += ",\"D_F\":";
  AppendBlock(s, model.dec_forward);
  s += ",\"D_I\":";
  AppendBlock(s, model.dec_inverse);
  s += "},\"train_config\":" + TrainConfigJson(model.train_config);
  s += ",\"rng_seed\":" + std::to_string(model.rng_seed);
  s += "}\n";
  return s;
}

JointModel ParseModelJson(std::string_view text) {
  const json root = ParseJson(text, 0);
  const json& f = Field(root, "format", 0);
  if (!f.is_string() || f.get<std::string>() != "invskill-model") {
    ParseFail("not an invskill-model document", 0);
  }
  if (ToInt(Field(root, "version", 0), 0) != 1) {
    ParseFail("unsupported model version", 0);
  }
  JointModel model;
  const json& dims = Field(root, "dims", 0);
  model.dims.d_y = ToInt(Field(dims, "d_y", 0), 0);
  model.dims.d_psi = ToInt(Field(dims, "d_psi", 0), 0);
  model.dims.d_r = ToInt(Field(dims, "d_r", 0), 0);
  model.dims.d_e = ToInt(Field(dims, "d_e", 0), 0);
  const json& blocks = Field(root, "blocks", 0);
  model.enc_forward = BlockFromJson(Field(blocks, "E_F", 0));
  model.enc_inverse = BlockFromJson(Field(blocks, "E_I", 0));
  model.embed_psi = BlockFromJson(Field(blocks, "E_psi", 0));
  model.dec_forward = BlockFromJson(Field(blocks, "D_F", 0));
  model.dec_inverse = BlockFromJson(Field(blocks, "D_I", 0));
  if (root.contains("train_config")) {
    OverlayTrainConfigJson(root["train_config"], model.train_config, nullptr, 0);
  }
  if (root.contains("rng_seed")) {
    const json& seed = root["rng_seed"];
    if (!seed.is_number_integer()) ParseFail("rng_seed must be an integer", 0);
    model.rng_seed = seed.get<uint64_t>();
  }
  try {
    ValidateJointModel(model);
  } catch (const Error& e) {
    ParseFail(e.what(), 0);
  }
  return model;
}

JointModel LoadModel(const std::filesystem::path& path) {
  return ParseModelJson(ReadFile(path));
}

void SaveModel(const JointModel& model, const std::filesystem::path& path) {
  WriteFile(path, ModelJson(model));
}

}  // namespace invskill
