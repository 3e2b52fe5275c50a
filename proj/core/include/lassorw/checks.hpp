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

#include <string>
#include <string_view>
#include <vector>

namespace lassorw {

// Self-contained invariant suites, one group per module, runnable from the
// command line. Each suite draws its inputs from a fixed seed.

/// Deliberate corruption used to exercise the harness itself.
enum class Fault {
  None,
  HConstant,  // shifts the constant term of h' by 1e-3
};

Fault parse_fault(std::string_view name);

struct CheckResult {
  std::string suite;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Suite names, "<module>.<property>".
std::vector<std::string> check_suite_names();

/// Runs suites whose name equals `filter` or starts with "<filter>.";
/// an empty filter runs everything. Throws ConfigError if nothing matches.
std::vector<CheckResult> run_checks(std::string_view filter = {},
                                    Fault fault = Fault::None);

}  // namespace lassorw
