// Copyright 2026 The Repeated Sales Authors
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

#ifndef REPEATED_SALES_TOOLS_CLI_HPP_
#define REPEATED_SALES_TOOLS_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace rsales::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitVerificationFailed = 2;
inline constexpr int kExitInvalidConfig = 3;

inline constexpr const char* kToolVersion = "1.0.0";

// Runs one command line (without the program name). Results go to `out`,
// diagnostics to `err`; returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace rsales::cli

#endif  // REPEATED_SALES_TOOLS_CLI_HPP_
