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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace submod {

enum class ErrorCode {
  kOutOfRange,
  kElementInSet,
  kTooLarge,
  kInfeasible,
  kBadK,
  kBadParams,
  kSingularSubmatrix,
  kOutOfBox,
  kTooLargeForExact,
  kUnsupportedMatroid,
  kNegativeDenominator,
  kEmptyFunctionList,
  kUnknownEdge,
  kOverlap,
  kBadHorizon,
  kAsymmetricH,
  kInfeasibleDomain,
  kLPFailure,
  kUnsupportedDomain,
  kParseError,
  kIncompatibleAlgorithm,
  kUnknownSuite,
};

inline std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kElementInSet: return "ElementInSet";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kBadK: return "BadK";
    case ErrorCode::kBadParams: return "BadParams";
    case ErrorCode::kSingularSubmatrix: return "SingularSubmatrix";
    case ErrorCode::kOutOfBox: return "OutOfBox";
    case ErrorCode::kTooLargeForExact: return "TooLargeForExact";
    case ErrorCode::kUnsupportedMatroid: return "UnsupportedMatroid";
    case ErrorCode::kNegativeDenominator: return "NegativeDenominator";
    case ErrorCode::kEmptyFunctionList: return "EmptyFunctionList";
    case ErrorCode::kUnknownEdge: return "UnknownEdge";
    case ErrorCode::kOverlap: return "Overlap";
    case ErrorCode::kBadHorizon: return "BadHorizon";
    case ErrorCode::kAsymmetricH: return "AsymmetricH";
    case ErrorCode::kInfeasibleDomain: return "InfeasibleDomain";
    case ErrorCode::kLPFailure: return "LPFailure";
    case ErrorCode::kUnsupportedDomain: return "UnsupportedDomain";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIncompatibleAlgorithm: return "IncompatibleAlgorithm";
    case ErrorCode::kUnknownSuite: return "UnknownSuite";
  }
  return "Unknown";
}

// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace submod
