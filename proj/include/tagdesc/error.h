// Copyright 2026 The tagdesc Authors.
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

#ifndef TAGDESC_ERROR_H_
#define TAGDESC_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace tagdesc {

// Broad error classes. The CLI maps each to a stable exit code.
enum class ErrorKind {
  kConfig,      // bad flags, schema, complement map, mismatched universes
  kIo,          // unreadable / unwritable files
  kInvalidData, // malformed input documents, missing values, bad cells
  kInfeasible,  // no descriptor exists under the given constraints
  kBudget,      // exact search ran out of nodes
  kInternal,
};

// Finer-grained reason, used by tests to assert on the specific failure.
enum class ErrorCode {
  kGeneric,
  kMalformedDescriptor,
  kEmptyCluster,
  kUntaggedItem,
  kInfeasibleUnderMask,
  kCnfInfeasible,
  kBudgetExceeded,
  kOracleCap,
  kMissingValue,
  kUnmappedLabel,
  kZeroVariance,
};

std::string_view ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, ErrorCode code, const std::string& message)
      : std::runtime_error(message), kind_(kind), code_(code) {}
  Error(ErrorKind kind, const std::string& message)
      : Error(kind, ErrorCode::kGeneric, message) {}

  ErrorKind kind() const { return kind_; }
  ErrorCode code() const { return code_; }

 private:
  ErrorKind kind_;
  ErrorCode code_;
};

inline Error ConfigError(const std::string& message) {
  return Error(ErrorKind::kConfig, message);
}
inline Error IoError(const std::string& message) {
  return Error(ErrorKind::kIo, message);
}
inline Error DataError(const std::string& message,
                       ErrorCode code = ErrorCode::kGeneric) {
  return Error(ErrorKind::kInvalidData, code, message);
}

}  // namespace tagdesc

#endif  // TAGDESC_ERROR_H_
