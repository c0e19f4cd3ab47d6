// Copyright 2026 The Leastcore Authors.
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

#include "leastcore/error.h"

namespace leastcore {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNonPositiveGrandValue: return "NonPositiveGrandValue";
    case ErrorCode::kEmptyCoalition: return "EmptyCoalition";
    case ErrorCode::kEmptySample: return "EmptySample";
    case ErrorCode::kEmptyBatch: return "EmptyBatch";
    case ErrorCode::kTooManyPlayers: return "TooManyPlayers";
    case ErrorCode::kInvalidDistributionParams:
      return "InvalidDistributionParams";
    case ErrorCode::kInvalidGraphParams: return "InvalidGraphParams";
    case ErrorCode::kResampleLimitExceeded: return "ResampleLimitExceeded";
    case ErrorCode::kNonFiniteInput: return "NonFiniteInput";
    case ErrorCode::kNumericalBreakdown: return "NumericalBreakdown";
    case ErrorCode::kCycleLimitExceeded: return "CycleLimitExceeded";
    case ErrorCode::kBudgetExhausted: return "BudgetExhausted";
    case ErrorCode::kBudgetTooSmall: return "BudgetTooSmall";
    case ErrorCode::kInvalidPermutation: return "InvalidPermutation";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kMissingTargetColumn: return "MissingTargetColumn";
    case ErrorCode::kNonNumericCell: return "NonNumericCell";
    case ErrorCode::kDisconnectedComparisonGraph:
      return "DisconnectedComparisonGraph";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonFiniteInput:
    case ErrorCode::kNumericalBreakdown:
    case ErrorCode::kCycleLimitExceeded:
    case ErrorCode::kNonPositiveGrandValue:
    case ErrorCode::kResampleLimitExceeded:
      return 3;
    case ErrorCode::kBudgetExhausted:
    case ErrorCode::kBudgetTooSmall:
      return 4;
    default:
      return 2;
  }
}

}  // namespace leastcore
