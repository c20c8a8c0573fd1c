//
// Copyright 2026 The ptypo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Subcommand dispatch for the ptypo tool, kept in a library so tests can
// drive it without spawning processes.

#pragma once

#include <ostream>
#include <span>
#include <string>

namespace ptypo::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kDataError = 2,
  kNumericError = 3,
};

// Name of the environment variable that points at a directory holding
// layout.txt and tables.txt; the built-in resources are used when unset.
inline constexpr const char* kResourceDirEnv = "PTYPO_RESOURCE_DIR";

// args[0] is the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace ptypo::cli
