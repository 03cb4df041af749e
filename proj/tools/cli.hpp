// Copyright 2026 The dualstat Authors.
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

#ifndef DUALSTAT_TOOLS_CLI_HPP_
#define DUALSTAT_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace dualstat::cli {

enum ExitCode : int {
  kOk = 0,
  kGateFailed = 1,
  kUsage = 2,
};

/// Runs the command line `args` (without the program name), writing the
/// payload to `out` and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dualstat::cli

#endif  // DUALSTAT_TOOLS_CLI_HPP_
