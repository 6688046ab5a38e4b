// Copyright 2026 The Authors.
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

#ifndef FDC_ERRORS_H_
#define FDC_ERRORS_H_

#include <stdexcept>
#include <string>

namespace fdc {

enum class ErrorCode {
  kInvalidArgument,
  kNonSymmetric,
  kNonConvergent,
  kNotPositiveDefinite,
  kEmptyInput,
  kParseError,
  kZeroPoint,
  kNonInteger,
  kRankDeficient,
  kIterationBudgetExceeded,
  kInternalInvariantViolated,
  kInfeasible,
  kSingularTransform,
  kDegenerateSecondMoment,
  kCoverageFailure,
  kIterationCapExceeded,
  kRejectionBudgetExceeded,
  kSizeLimit,
  kIoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}
  // For input errors tied to a position in a file (1-based, 0 = unknown).
  Error(ErrorCode code, const std::string& what, long line)
      : std::runtime_error(std::string(error_code_name(code)) + " (line " +
                           std::to_string(line) + "): " + what),
        code_(code),
        line_(line) {}

  ErrorCode code() const { return code_; }
  long line() const { return line_; }

 private:
  ErrorCode code_;
  long line_ = 0;
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNonSymmetric: return "NonSymmetric";
    case ErrorCode::kNonConvergent: return "NonConvergent";
    case ErrorCode::kNotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kZeroPoint: return "ZeroPoint";
    case ErrorCode::kNonInteger: return "NonInteger";
    case ErrorCode::kRankDeficient: return "RankDeficient";
    case ErrorCode::kIterationBudgetExceeded: return "IterationBudgetExceeded";
    case ErrorCode::kInternalInvariantViolated:
      return "InternalInvariantViolated";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kSingularTransform: return "SingularTransform";
    case ErrorCode::kDegenerateSecondMoment: return "DegenerateSecondMoment";
    case ErrorCode::kCoverageFailure: return "CoverageFailure";
    case ErrorCode::kIterationCapExceeded: return "IterationCapExceeded";
    case ErrorCode::kRejectionBudgetExceeded: return "RejectionBudgetExceeded";
    case ErrorCode::kSizeLimit: return "SizeLimit";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace fdc

#endif  // FDC_ERRORS_H_
