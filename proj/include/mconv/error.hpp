// Copyright 2026 The mconv Authors.
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mconv {

enum class ErrorCode {
  kArithmetic,
  kEvalOutsideDomain,
  kInfiniteSlope,
  kStartOutsideDomain,
  kNotDescending,
  kEnumerationTooLarge,
  kEmptyDomain,
  kInfeasibleK,
  kIterationCapExceeded,
  kInconsistentRank,
  kNonConvexTable,
  kMalformedBreakpoints,
  kDuplicatePoint,
  kPointOutsideBox,
  kGenerationFailed,
  kSchema,
  kInvariantViolation,
  kInvalidArgument,
};

constexpr std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kArithmetic: return "ArithmeticError";
    case ErrorCode::kEvalOutsideDomain: return "EvalOutsideDomain";
    case ErrorCode::kInfiniteSlope: return "InfiniteSlope";
    case ErrorCode::kStartOutsideDomain: return "StartOutsideDomain";
    case ErrorCode::kNotDescending: return "NotDescending";
    case ErrorCode::kEnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::kEmptyDomain: return "EmptyDomain";
    case ErrorCode::kInfeasibleK: return "InfeasibleK";
    case ErrorCode::kIterationCapExceeded: return "IterationCapExceeded";
    case ErrorCode::kInconsistentRank: return "InconsistentRank";
    case ErrorCode::kNonConvexTable: return "NonConvexTable";
    case ErrorCode::kMalformedBreakpoints: return "MalformedBreakpoints";
    case ErrorCode::kDuplicatePoint: return "DuplicatePoint";
    case ErrorCode::kPointOutsideBox: return "PointOutsideBox";
    case ErrorCode::kGenerationFailed: return "GenerationFailed";
    case ErrorCode::kSchema: return "SchemaError";
    case ErrorCode::kInvariantViolation: return "InvariantViolation";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

// Every failure raised by the library carries one of the codes above so that
// front ends can map it to an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void ensure(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) fail(code, what);
}

}  // namespace mconv
