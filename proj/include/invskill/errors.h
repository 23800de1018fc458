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

#ifndef INVSKILL_ERRORS_H_
#define INVSKILL_ERRORS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace invskill {

enum class ErrorCode {
  kInvalidTrajectory,
  kParseError,
  kIoError,
  kSizeMismatch,
  kDimMismatch,
  kInvalidCost,
  kInvalidStd,
  kStateError,
  kEmptyObservation,
  kInvalidWeight,
  kRoleError,
  kEmptyDataset,
  kInvalidConfig,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported as Error. `line()` is the 1-based input
// line for parse errors and 0 otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, int line = 0)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code),
        line_(line) {}

  ErrorCode code() const { return code_; }
  int line() const { return line_; }

 private:
  ErrorCode code_;
  int line_;
};

inline std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidTrajectory: return "InvalidTrajectory";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kSizeMismatch: return "SizeMismatch";
    case ErrorCode::kDimMismatch: return "DimMismatch";
    case ErrorCode::kInvalidCost: return "InvalidCost";
    case ErrorCode::kInvalidStd: return "InvalidStd";
    case ErrorCode::kStateError: return "StateError";
    case ErrorCode::kEmptyObservation: return "EmptyObservation";
    case ErrorCode::kInvalidWeight: return "InvalidWeight";
    case ErrorCode::kRoleError: return "RoleError";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

}  // namespace invskill

#endif  // INVSKILL_ERRORS_H_
