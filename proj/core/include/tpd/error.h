// Copyright 2026 The tpd Authors.
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

#ifndef TPD_ERROR_H_
#define TPD_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tpd {

enum class ErrorCode {
  kInvalidInstance,
  kUnknownTaxon,
  kInfeasibleSet,
  kDomainMismatch,
  kNonBinaryTree,
  kNotAStar,
  kUnsupportedMode,
  kBadParams,
  kParseError,
  kNonIntegerWeight,
  kDuplicateLeaf,
  kSchemaError,
  // Size guards. Inputs are well formed but too large for the chosen method.
  kSetTooLarge,
  kInstanceTooLarge,
  kSearchSpaceTooLarge,
  kDTooLarge,
  kDbarTooLarge,
  kStateSpaceTooLarge,
  kBoundTooLarge,
  // A solver produced a witness that failed re-verification.
  kInternal,
};

std::string_view ErrorCodeName(ErrorCode code);

bool IsGuardError(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Carries the byte offset into the parsed text.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t offset, const std::string& message);

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace tpd

#endif  // TPD_ERROR_H_
