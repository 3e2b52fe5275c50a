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

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "lassorw/linalg.hpp"

namespace lassorw {

/// Bit-reproducible random stream. The engine is std::mt19937_64, whose
/// output sequence is fixed by the C++ standard; uniforms and normals are
/// derived here rather than through std:: distributions, whose algorithms
/// are implementation-defined.
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64+box-muller";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform integer in [0, bound), unbiased (rejection sampling).
  std::uint64_t below(std::uint64_t bound);
  /// Standard normal via Box-Muller; the second variate is cached.
  double normal();

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

/// SplitMix64 finalizer; used to derive independent per-trial seeds.
std::uint64_t mix64(std::uint64_t x);

struct InstanceSpec {
  int n = 256;
  int m = 100;
  int k = 15;
  std::optional<double> snr_db;  // absent: noise-free
  std::uint64_t seed = 0;
};

struct Instance {
  Matrix a;
  Vector x_true;
  Vector y;
  Vector noise;
  std::vector<int> support;  // sorted
  std::uint64_t seed = 0;
};

/// Draw order, all from one Rng(seed): A row by row with entries N(0, 1/m);
/// the support as k distinct indices by partial Fisher-Yates, then sorted;
/// N(0, 1) values for the sorted support; noise last. y = A x_true + noise.
Instance gen_instance(const InstanceSpec& spec);

/// Gaussian noise with per-entry variance ||clean||^2 / (m 10^(snr_db/10)).
/// snr_db = +inf yields the zero vector.
Vector add_noise_snr(const Vector& clean, double snr_db, Rng& rng);

}  // namespace lassorw
