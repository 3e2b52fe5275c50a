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

#include <filesystem>
#include <string>
#include <string_view>

#include "lassorw/bench.hpp"
#include "lassorw/penalty.hpp"

namespace lassorw {

/// Builds a penalty from its name and the parameter set; parameters not used
/// by the kind are ignored. Defaults: eps 0.1, q 0.5, alpha 2, beta 1e3.
PenaltySpec make_penalty(std::string_view kind, double eps = 0.1,
                         double q = 0.5, double alpha = 2.0,
                         double beta = PenaltySpec::kDefaultBeta);

/// Parses a JSON object whose keys mirror BenchConfig field names. Missing
/// keys keep their defaults, so "{}" is the reference setup; unknown keys
/// are rejected. Penalties are given as names ("log") or objects
/// ({"kind": "lq", "eps": 0.1, "q": 0.5}); "admm" is an object with keys
/// rho, tol_abs, tol_rel, max_iter, adaptive_rho, polish; "snr_db" may
/// be null.
BenchConfig parse_bench_config(std::string_view json_text);
BenchConfig load_bench_config(const std::filesystem::path& path);

/// Inverse of parse_bench_config.
std::string dump_bench_config(const BenchConfig& cfg);

}  // namespace lassorw
