// Copyright 2026 The Erasure Cost Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ERASURE_TOOLS_CLI_H_
#define ERASURE_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace erasure::cli {

inline constexpr char kVersion[] = "1.0.0";

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIterationCap = 2;

// Runs one subcommand. `args` excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

// Runs the built-in claim checks, printing "<claim> : PASS|FAIL" per line.
// Returns the number of failed claims.
int VerifyClaims(std::ostream& out);

}  // namespace erasure::cli

#endif  // ERASURE_TOOLS_CLI_H_
