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

#include "tpd/error.h"

#include <string>

namespace tpd {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInstance: return "InvalidInstance";
    case ErrorCode::kUnknownTaxon: return "UnknownTaxon";
    case ErrorCode::kInfeasibleSet: return "InfeasibleSet";
    case ErrorCode::kDomainMismatch: return "DomainMismatch";
    case ErrorCode::kNonBinaryTree: return "NonBinaryTree";
    case ErrorCode::kNotAStar: return "NotAStar";
    case ErrorCode::kUnsupportedMode: return "UnsupportedMode";
    case ErrorCode::kBadParams: return "BadParams";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kNonIntegerWeight: return "NonIntegerWeight";
    case ErrorCode::kDuplicateLeaf: return "DuplicateLeaf";
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kSetTooLarge: return "SetTooLarge";
    case ErrorCode::kInstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::kSearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorCode::kDTooLarge: return "DTooLarge";
    case ErrorCode::kDbarTooLarge: return "DbarTooLarge";
    case ErrorCode::kStateSpaceTooLarge: return "StateSpaceTooLarge";
    case ErrorCode::kBoundTooLarge: return "BoundTooLarge";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

bool IsGuardError(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSetTooLarge:
    case ErrorCode::kInstanceTooLarge:
    case ErrorCode::kSearchSpaceTooLarge:
    case ErrorCode::kDTooLarge:
    case ErrorCode::kDbarTooLarge:
    case ErrorCode::kStateSpaceTooLarge:
    case ErrorCode::kBoundTooLarge:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

ParseError::ParseError(ErrorCode code, std::size_t offset,
                       const std::string& message)
    : Error(code, message + " (at byte " + std::to_string(offset) + ")"),
      offset_(offset) {}

}  // namespace tpd
