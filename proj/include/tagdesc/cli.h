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


// The tagdesc command line, callable in-process.
//
// Exit codes:
//   0  success
//   1  internal error
//   2  usage or configuration error
//   3  I/O error
//   4  infeasible (no descriptor under the given constraints)
//   5  invalid input data
//   6  exact search budget exhausted

#ifndef TAGDESC_CLI_H_
#define TAGDESC_CLI_H_

#include <ostream>

#include "tagdesc/error.h"

namespace tagdesc {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitInfeasible = 4;
inline constexpr int kExitInvalidData = 5;
inline constexpr int kExitBudget = 6;

int ExitCodeFor(ErrorKind kind);

// Output without --out goes to `out`; diagnostics go to `err`.
int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tagdesc

#endif  // TAGDESC_CLI_H_
