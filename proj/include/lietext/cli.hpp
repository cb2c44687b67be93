// Copyright 2026 The lietext Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <ostream>

namespace lietext {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;  // usage, config or input validation
inline constexpr int kExitFailure = 2;  // I/O, divergence, failed verification

// Entry point of the lietext command. Human-readable text goes to `out`,
// diagnostics to `err`, machine reports to the file named by --out.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lietext
