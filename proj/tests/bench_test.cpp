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

#include "lassorw/bench.hpp"

#include <gtest/gtest.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lassorw/csv.hpp"
#include "lassorw/errors.hpp"
#include "lassorw/probgen.hpp"

namespace lassorw {
namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() /
         ("lassorw_bench_" + std::to_string(::getpid()) + "_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Blanks the runtime_ms field of every data line.
std::string without_runtime(const std::string& csv_text) {
  const auto& cols = csv_columns();
  const auto col = static_cast<std::size_t>(
      std::find(cols.begin(), cols.end(), "runtime_ms") - cols.begin());
  std::istringstream in(csv_text);
  std::string line, out;
  std::getline(in, line);
  out += line + '\n';
  while (std::getline(in, line)) {
    auto fields = csv::split_record(line.substr(0, line.size() - 1));
    fields.at(col).clear();
    for (const auto& f : fields) out += csv::quote_field(f) + ',';
    out += '\n';
  }
  return out;
}

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

BenchConfig tiny_config() {
  BenchConfig cfg;
  cfg.n = 40;
  cfg.m = 20;
  cfg.k_values = {3};
  cfg.trials = 2;
  cfg.lambda_noisefree = 1e-4;
  cfg.ist_max_iter = 20000;
  cfg.threads = 1;
  return cfg;
}

TEST(IsRecovered, Examples) {
  const Vector x = vec({1, -2, 0});
  EXPECT_TRUE(is_recovered(x, x));
  EXPECT_FALSE(is_recovered(vec({0, 0}), vec({1e-3, 0})));
  EXPECT_TRUE(is_recovered(vec({0, 0}), vec({5e-4, -9e-4})));
  EXPECT_THROW(is_recovered(x, vec({1})), DimensionError);
}

TEST(Rse, Examples) {
  const Vector x = vec({1, -2, 0});
  EXPECT_EQ(rse(x, x), 0.0);
  EXPECT_DOUBLE_EQ(rse(x, Vector::Zero(3)), 1.0);
  EXPECT_DOUBLE_EQ(rse(vec({1, 0}), vec({0.5, 0.5})), 0.5);
  EXPECT_THROW(rse(Vector::Zero(2), vec({1, 0})), DomainError);
}

TEST(TrialSeed, MixesKAndTrial) {
  EXPECT_EQ(trial_seed(0, 15, 3), mix64((15ULL << 32) | 3ULL));
  EXPECT_EQ(trial_seed(7, 15, 3), 7ULL ^ mix64((15ULL << 32) | 3ULL));
  EXPECT_NE(trial_seed(0, 15, 3), trial_seed(0, 3, 15));
}

TEST(RunBench, OneRecordPerPenalty) {
  BenchConfig cfg = tiny_config();
  cfg.trials = 1;
  cfg.algorithms = {Algorithm::Irl1Admm};
  const auto records = run_bench(cfg);
  ASSERT_EQ(records.size(), 3u);
  EXPECT_EQ(records[0].penalty, "log");
  EXPECT_EQ(records[1].penalty, "lq");
  EXPECT_EQ(records[2].penalty, "mcp");
  for (const auto& r : records) {
    EXPECT_EQ(r.algorithm, "irl1_admm");
    EXPECT_EQ(r.lambda, 1e-4);
    EXPECT_FALSE(r.snr_db);
    EXPECT_EQ(r.rng, Rng::kAlgorithm);
    EXPECT_LE(r.outer_iters, cfg.max_reweight);
  }
}

TEST(RunBench, RecordOrderAndCount) {
  BenchConfig cfg = tiny_config();
  cfg.k_values = {2, 4};
  const auto records = run_bench(cfg);
  ASSERT_EQ(records.size(), 2u * 2u * 7u);
  EXPECT_EQ(records[0].algorithm, "lasso");
  EXPECT_EQ(records[0].penalty, "none");
  EXPECT_EQ(records[1].algorithm, "irl1_admm");
  EXPECT_EQ(records[4].algorithm, "irl1_ist");
  EXPECT_EQ(records[7].trial, 1);
  EXPECT_EQ(records[14].k, 4);
}

TEST(RunBench, DeterministicAcrossRunsAndThreads) {
  BenchConfig cfg = tiny_config();
  cfg.trials = 3;
  const auto a = temp_file("a.csv"), b = temp_file("b.csv");
  write_csv(run_bench(cfg), a);
  cfg.threads = 3;
  write_csv(run_bench(cfg), b);
  EXPECT_EQ(without_runtime(slurp(a)), without_runtime(slurp(b)));
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST(RunBench, NoisyRunsUseNoisyLambda) {
  BenchConfig cfg = tiny_config();
  cfg.snr_db = 25.0;
  cfg.trials = 1;
  cfg.algorithms = {Algorithm::Lasso};
  const auto records = run_bench(cfg);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].lambda, cfg.lambda_noisy);
  EXPECT_EQ(records[0].snr_db, 25.0);
}

TEST(RunBench, IrlLogAtLeastAsGoodAsLassoAtK15) {
  BenchConfig cfg;
  cfg.k_values = {15};
  cfg.trials = 20;
  cfg.algorithms = {Algorithm::Lasso, Algorithm::Irl1Admm};
  cfg.penalties = {PenaltySpec::log(0.1)};
  const auto rows = aggregate(run_bench(cfg));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_GE(rows[1].recovery_rate, rows[0].recovery_rate);
}

TEST(BenchConfig, Validation) {
  BenchConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.k_values = {300};
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = BenchConfig{};
  cfg.trials = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = BenchConfig{};
  cfg.penalties.clear();
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.algorithms = {Algorithm::Lasso};
  EXPECT_NO_THROW(cfg.validate());
}

TrialRecord sample_record() {
  TrialRecord r;
  r.algorithm = "irl1_ist";
  r.penalty = "lq";
  r.k = 35;
  r.trial = 7;
  r.seed = 0xfedcba9876543210ULL;
  r.recovered = true;
  r.rse = 1.0 / 3.0;
  r.outer_iters = 12345;
  r.total_inner_iters = 12345;
  r.runtime_ms = 12.5;
  r.lambda = 1e-5;
  r.snr_db = 25.0;
  r.error = "cap, \"quoted\"\nsecond line";
  r.rng = std::string(Rng::kAlgorithm);
  return r;
}

TEST(Csv, EmptyIsHeaderOnly) {
  const auto path = temp_file("empty.csv");
  write_csv({}, path);
  const std::string text = slurp(path);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1);
  EXPECT_EQ(text.rfind("algorithm,penalty,k,trial,seed,recovered,rse,", 0), 0u);
  EXPECT_TRUE(read_csv(path).empty());
  std::filesystem::remove(path);
}

TEST(Csv, OneRecordIsTwoLines) {
  TrialRecord r = sample_record();
  r.error.clear();
  const auto path = temp_file("one.csv");
  write_csv({r}, path);
  const std::string text = slurp(path);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
  std::filesystem::remove(path);
}

TEST(Csv, RoundTripIsExact) {
  TrialRecord noisefree = sample_record();
  noisefree.snr_db.reset();
  noisefree.error.clear();
  noisefree.rse = std::numeric_limits<double>::quiet_NaN();
  const std::vector<TrialRecord> records = {sample_record(), noisefree};
  const auto path = temp_file("rt.csv");
  write_csv(records, path);
  const auto back = read_csv(path);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0], records[0]);
  EXPECT_TRUE(std::isnan(back[1].rse));
  TrialRecord b1 = back[1], r1 = records[1];
  b1.rse = r1.rse = 0.0;
  EXPECT_EQ(b1, r1);
  std::filesystem::remove(path);
}

TEST(Csv, RejectsForeignHeader) {
  const auto path = temp_file("bad.csv");
  std::ofstream(path) << "a,b,c\n1,2,3\n";
  EXPECT_THROW(read_csv(path), IoError);
  std::filesystem::remove(path);
}

TEST(Aggregate, Means) {
  TrialRecord a = sample_record(), b = sample_record();
  a.error.clear();
  a.recovered = true;
  a.rse = 0.1;
  a.total_inner_iters = 10;
  b.recovered = false;
  b.rse = 0.3;
  b.total_inner_iters = 30;
  b.error = "x";
  TrialRecord c = sample_record();
  c.k = 15;
  const auto rows = aggregate({a, b, c});
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].k, 15);
  EXPECT_EQ(rows[1].count, 2);
  EXPECT_EQ(rows[1].errors, 1);
  EXPECT_DOUBLE_EQ(rows[1].recovery_rate, 0.5);
  EXPECT_DOUBLE_EQ(rows[1].mean_rse, 0.2);
  EXPECT_DOUBLE_EQ(rows[1].mean_inner_iters, 20.0);
}

}  // namespace
}  // namespace lassorw
