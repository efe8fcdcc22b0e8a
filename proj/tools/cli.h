// Copyright 2026 The EUA Solver Authors
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


// Command-line front end. Subcommands:
//   solve     run one solver on an instance file
//   generate  build an instance from a generator config
//   bench     run an experiment set and write its result files
//   compare   run every solver on one instance and print a metric table
//   oracle    exhaustive optimum of a tiny instance
// Exit status: 0 on success, 1 on input errors, 2 on internal errors.

#ifndef EUA_TOOLS_CLI_H_
#define EUA_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

#include "absl/status/status.h"

namespace eua::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInternalError = 2;

int ExitCodeFor(const absl::Status& status);

// `args` excludes the program name.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eua::cli

#endif  // EUA_TOOLS_CLI_H_
