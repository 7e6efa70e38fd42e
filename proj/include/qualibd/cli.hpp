// Copyright 2026 The QualiBD Authors
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

#pragma once

#include <iosfwd>

namespace qualibd {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kFindings = 1;  // Error-severity diagnostics, non-canonical text, write failure
inline constexpr int kParseFailure = 2;
inline constexpr int kUsage = 64;
}  // namespace exit_code

/// Entry point of the `qualibd` command line tool.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qualibd
