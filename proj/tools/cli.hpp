// Copyright 2026 The lassorw Authors
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

#include <ostream>
#include <string>
#include <vector>

namespace lassorw::cli {

inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kNotConverged = 2;
inline constexpr int kInvariantFailed = 3;

/// Entry point of the `lassorw` tool. `args` excludes the program name.
/// Data goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

/// Entry point of `lassorw-gen`, which writes one synthetic instance as
/// A.csv, y.csv and x_true.csv into a directory.
int run_gen(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace lassorw::cli
