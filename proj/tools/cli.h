// Copyright 2026 The tempex Authors.
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


// The tempex command-line interface, callable in-process.

#ifndef TEMPEX_TOOLS_CLI_H_
#define TEMPEX_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace tempex::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitWarning = 1;  // only under --strict
inline constexpr int kExitUsage = 2;

// Runs one command line; args[0] is the program name.
int Run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

}  // namespace tempex::cli

#endif  // TEMPEX_TOOLS_CLI_H_
