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

#ifndef LEASTCORE_ERROR_H_
#define LEASTCORE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace leastcore {

enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kNonPositiveGrandValue,
  kEmptyCoalition,
  kEmptySample,
  kEmptyBatch,
  kTooManyPlayers,
  kInvalidDistributionParams,
  kInvalidGraphParams,
  kResampleLimitExceeded,
  kNonFiniteInput,
  kNumericalBreakdown,
  kCycleLimitExceeded,
  kBudgetExhausted,
  kBudgetTooSmall,
  kInvalidPermutation,
  kParseError,
  kMissingTargetColumn,
  kNonNumericCell,
  kDisconnectedComparisonGraph,
  kIoError,
};

std::string_view ErrorCodeName(ErrorCode code);

// Process exit status for the CLI: 2 config error, 3 numeric failure,
// 4 budget exhausted.
int ExitCodeFor(ErrorCode code);

// All library failures surface as this exception type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace leastcore

#endif  // LEASTCORE_ERROR_H_
