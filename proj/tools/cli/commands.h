// Copyright 2026 The NGM Toolkit Authors.
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

#ifndef NGM_TOOLS_CLI_COMMANDS_H_
#define NGM_TOOLS_CLI_COMMANDS_H_

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "cli/config.h"
#include "ngm/error.h"

namespace ngm::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitNumericFault = 2;
inline constexpr int kExitNotConverged = 3;

int ExitCodeFor(ErrorCode code);

struct Command {
  std::string name;
  std::string description;
  std::vector<KeySpec> keys;
  std::function<int(const RunConfig&, std::ostream& out, std::ostream& err)> run;
};

const std::vector<Command>& Commands();

// Parses argv, runs one subcommand and returns the exit code. Errors are
// written to `err`.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace ngm::cli

#endif  // NGM_TOOLS_CLI_COMMANDS_H_
