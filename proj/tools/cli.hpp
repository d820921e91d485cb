// Copyright 2026 The latmin Authors
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

#ifndef LATMIN_TOOLS_CLI_HPP_
#define LATMIN_TOOLS_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace latmin::cli {

// Exit statuses.
inline constexpr int kSuccess = 0;
inline constexpr int kDomainFailure = 1;
inline constexpr int kUsageError = 2;

// Runs `latmin <args...>`; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace latmin::cli

#endif  // LATMIN_TOOLS_CLI_HPP_
