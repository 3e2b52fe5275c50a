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

#include "lassorw/probgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "lassorw/errors.hpp"

namespace lassorw {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw DomainError("Rng::below: bound must be positive");
  // Largest multiple of bound that fits; reject draws above it.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t r;
  do {
    r = engine_();
  } while (r >= limit);
  return r % bound;
}

double Rng::normal() {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  double u1;
  do {
    u1 = uniform();
  } while (u1 == 0.0);
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Instance gen_instance(const InstanceSpec& spec) {
  if (spec.n < 1 || spec.m < 1)
    throw ConfigError("gen_instance: n and m must be positive");
  if (spec.k < 0 || spec.k > spec.n)
    throw ConfigError("gen_instance: sparsity k=" + std::to_string(spec.k) +
                      " outside [0, n=" + std::to_string(spec.n) + "]");

  Rng rng(spec.seed);
  Instance inst;
  inst.seed = spec.seed;

  const double sd = 1.0 / std::sqrt(static_cast<double>(spec.m));
  inst.a.resize(spec.m, spec.n);
  for (int i = 0; i < spec.m; ++i)
    for (int j = 0; j < spec.n; ++j) inst.a(i, j) = sd * rng.normal();

  std::vector<int> perm(static_cast<std::size_t>(spec.n));
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = 0; i < spec.k; ++i) {
    const auto j = i + static_cast<int>(rng.below(
                           static_cast<std::uint64_t>(spec.n - i)));
    std::swap(perm[static_cast<std::size_t>(i)],
              perm[static_cast<std::size_t>(j)]);
  }
  inst.support.assign(perm.begin(), perm.begin() + spec.k);
  std::sort(inst.support.begin(), inst.support.end());

  inst.x_true = Vector::Zero(spec.n);
  for (int idx : inst.support) inst.x_true(idx) = rng.normal();

  const Vector clean = inst.a * inst.x_true;
  if (spec.snr_db) {
    inst.noise = add_noise_snr(clean, *spec.snr_db, rng);
  } else {
    inst.noise = Vector::Zero(spec.m);
  }
  inst.y = clean + inst.noise;
  return inst;
}

Vector add_noise_snr(const Vector& clean, double snr_db, Rng& rng) {
  if (std::isnan(snr_db) || snr_db == -std::numeric_limits<double>::infinity())
    throw ConfigError("add_noise_snr: snr_db must be a real or +inf");
  if (std::isinf(snr_db)) return Vector::Zero(clean.size());
  const double power = clean.squaredNorm();
  if (power == 0.0)
    throw DomainError("add_noise_snr: clean signal is zero, SNR undefined");
  const double var = power / (static_cast<double>(clean.size()) *
                              std::pow(10.0, snr_db / 10.0));
  const double sd = std::sqrt(var);
  Vector e(clean.size());
  for (Eigen::Index i = 0; i < e.size(); ++i) e(i) = sd * rng.normal();
  return e;
}

}  // namespace lassorw
