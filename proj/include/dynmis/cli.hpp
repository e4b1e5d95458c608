// Copyright 2026 The dynmis Authors
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

// Command-line front end: gen, run, verify and bench.
//
// Exit codes: 0 success, 1 usage or parse error, 2 I/O failure,
// 3 verification failure.

#ifndef DYNMIS_CLI_HPP_
#define DYNMIS_CLI_HPP_

#include <iosfwd>

namespace dynmis::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitVerify = 3;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dynmis::cli

#endif  // DYNMIS_CLI_HPP_
