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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lassorw/irl1.hpp"
#include "lassorw/penalty.hpp"
#include "lassorw/wlasso.hpp"

namespace lassorw {

enum class Algorithm { Lasso, Irl1Admm, Irl1Ist };

std::string_view to_string(Algorithm algo);
Algorithm parse_algorithm(std::string_view name);

/// Synthetic compressed-sensing sweep. Defaults reproduce the reference
/// setup: n=256, m=100, k in 15..55, log/lq/mcp with eps=0.1, q=0.5,
/// alpha=2, lambda 1e-5 (noise-free) or 1e-4 (noisy), tau=0.25, outer
/// change tolerance 1e-5, two reweighting iterations, 100 trials.
struct BenchConfig {
  int n = 256;
  int m = 100;
  std::vector<int> k_values = {15, 20, 25, 30, 35, 40, 45, 50, 55};
  int trials = 100;
  std::vector<PenaltySpec> penalties = {PenaltySpec::log(0.1),
                                        PenaltySpec::lq(0.1, 0.5),
                                        PenaltySpec::mcp(2.0)};
  std::vector<Algorithm> algorithms = {Algorithm::Lasso, Algorithm::Irl1Admm,
                                       Algorithm::Irl1Ist};
  double lambda_noisefree = 1e-5;
  double lambda_noisy = 1e-4;
  std::optional<double> snr_db;  // absent: noise-free
  double tau = 0.25;
  double delta = 1e-5;
  int max_reweight = 2;
  std::uint64_t base_seed = 0;

  // Solver knobs not fixed by the reference protocol.
  AdmmConfig admm;
  int ist_max_iter = 100000;
  // The reference tau=0.25 exceeds 1/||A||_2^2 for N(0, 1/m) matrices of
  // this shape, so the IST step-size check is off by default.
  bool ist_allow_unsafe_step = true;
  int threads = 0;  // 0: hardware concurrency

  double lambda() const { return snr_db ? lambda_noisy : lambda_noisefree; }
  void validate() const;
};

struct TrialRecord {
  std::string algorithm;  // lasso, irl1_admm, irl1_ist
  std::string penalty;    // none (lasso), log, lq, mcp
  int k = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  bool recovered = false;
  double rse = 0.0;
  int outer_iters = 0;
  long total_inner_iters = 0;
  double runtime_ms = 0.0;
  double lambda = 0.0;
  std::optional<double> snr_db;
  std::string error;  // empty on success
  std::string rng;    // generator identifier

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

/// True iff max_i |x_true_i - x_hat_i| < 1e-3.
bool is_recovered(const Vector& x_true, const Vector& x_hat);

/// ||x_true - x_hat||^2 / ||x_true||^2. Throws DomainError if x_true = 0.
double rse(const Vector& x_true, const Vector& x_hat);

/// Instance seed for (k, trial): base_seed xor mix64(k << 32 | trial).
std::uint64_t trial_seed(std::uint64_t base_seed, int k, int trial);

/// Runs every (k, trial) instance through every configured algorithm and
/// penalty. Records are ordered by (k, trial), then lasso, irl1_admm per
/// penalty, irl1_ist per penalty. A failing solve yields a record with a
/// non-empty `error`; metrics then refer to the solver's best iterate.
std::vector<TrialRecord> run_bench(const BenchConfig& cfg);

/// Column order of the CSV schema.
const std::vector<std::string>& csv_columns();

void write_csv(const std::vector<TrialRecord>& records,
               const std::filesystem::path& path);
std::vector<TrialRecord> read_csv(const std::filesystem::path& path);

struct Aggregate {
  int k = 0;
  std::string algorithm;
  std::string penalty;
  int count = 0;
  int errors = 0;
  double recovery_rate = 0.0;
  double mean_rse = 0.0;
  double mean_inner_iters = 0.0;
  double mean_outer_iters = 0.0;
  double mean_runtime_ms = 0.0;
};

/// Per (k, algorithm, penalty) means, ordered by k then first appearance.
std::vector<Aggregate> aggregate(const std::vector<TrialRecord>& records);

}  // namespace lassorw
