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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <thread>
#include <tuple>

#include "lassorw/csv.hpp"
#include "lassorw/errors.hpp"
#include "lassorw/probgen.hpp"

namespace lassorw {
namespace {

constexpr double kRecoveryTol = 1e-3;

struct Outcome {
  Vector x;
  int outer = 0;
  long inner = 0;
  std::string error;
};

Outcome solve_one(const BenchConfig& cfg, const Problem& p, Algorithm algo,
                  const PenaltySpec* spec) {
  const Vector x0 = Vector::Zero(p.cols());
  Outcome out;
  switch (algo) {
    case Algorithm::Lasso:
      try {
        auto sol = solve_admm(p, Vector::Ones(p.cols()), cfg.admm);
        out.x = std::move(sol.x);
        out.inner = sol.iters;
      } catch (const AdmmNotConverged& e) {
        out.x = e.best().x;
        out.inner = e.best().iters;
        out.error = e.what();
      }
      out.outer = 1;
      return out;
    case Algorithm::Irl1Admm:
      try {
        auto res = run_irl1_admm(p, *spec, x0,
                                 StopRule{cfg.delta, cfg.max_reweight},
                                 cfg.admm);
        out.x = std::move(res.x_hat);
        out.outer = res.trace.outer_iters;
        out.inner = res.trace.inner_iters_total;
      } catch (const ReweightingFailed& e) {
        out.x = e.partial().x_hat;
        out.outer = e.partial().trace.outer_iters;
        out.inner = e.partial().trace.inner_iters_total;
        out.error = e.what();
      }
      return out;
    case Algorithm::Irl1Ist: {
      auto res = run_irl1_ist(p, *spec, x0, cfg.tau,
                              StopRule{cfg.delta, cfg.ist_max_iter},
                              cfg.ist_allow_unsafe_step);
      out.x = std::move(res.x_hat);
      out.outer = res.trace.outer_iters;
      out.inner = res.trace.inner_iters_total;
      if (!res.converged)
        out.error = "irl1_ist: iteration cap " +
                    std::to_string(cfg.ist_max_iter) + " reached";
      return out;
    }
  }
  return out;
}

std::vector<TrialRecord> run_trial(const BenchConfig& cfg, int k, int trial) {
  const std::uint64_t seed = trial_seed(cfg.base_seed, k, trial);
  std::vector<TrialRecord> records;

  auto base = [&](Algorithm algo, std::string_view penalty) {
    TrialRecord r;
    r.algorithm = std::string(to_string(algo));
    r.penalty = std::string(penalty);
    r.k = k;
    r.trial = trial;
    r.seed = seed;
    r.lambda = cfg.lambda();
    r.snr_db = cfg.snr_db;
    r.rng = std::string(Rng::kAlgorithm);
    return r;
  };

  std::optional<Instance> inst;
  std::string gen_error;
  try {
    inst = gen_instance(InstanceSpec{cfg.n, cfg.m, k, cfg.snr_db, seed});
  } catch (const std::exception& e) {
    gen_error = e.what();
  }

  auto run = [&](Algorithm algo, const PenaltySpec* spec) {
    TrialRecord r = base(algo, spec ? to_string(spec->kind()) : "none");
    if (!inst) {
      r.error = gen_error;
      r.rse = std::numeric_limits<double>::quiet_NaN();
      records.push_back(std::move(r));
      return;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      const Problem p(inst->a, inst->y, cfg.lambda());
      out = solve_one(cfg, p, algo, spec);
    } catch (const std::exception& e) {
      out.error = e.what();
    }
    r.runtime_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
    r.outer_iters = out.outer;
    r.total_inner_iters = out.inner;
    r.error = std::move(out.error);
    if (out.x.size() == inst->x_true.size()) {
      r.recovered = is_recovered(inst->x_true, out.x);
      try {
        r.rse = rse(inst->x_true, out.x);
      } catch (const DomainError& e) {
        r.rse = std::numeric_limits<double>::quiet_NaN();
        r.recovered = false;
        if (r.error.empty()) r.error = e.what();
      }
    } else {
      r.rse = std::numeric_limits<double>::quiet_NaN();
    }
    records.push_back(std::move(r));
  };

  const auto has = [&](Algorithm a) {
    return std::find(cfg.algorithms.begin(), cfg.algorithms.end(), a) !=
           cfg.algorithms.end();
  };
  if (has(Algorithm::Lasso)) run(Algorithm::Lasso, nullptr);
  for (Algorithm algo : {Algorithm::Irl1Admm, Algorithm::Irl1Ist}) {
    if (!has(algo)) continue;
    for (const auto& spec : cfg.penalties) run(algo, &spec);
  }
  return records;
}

std::string format_optional(const std::optional<double>& v) {
  return v ? csv::format_real(*v) : std::string("inf");
}

}  // namespace

std::string_view to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::Lasso:
      return "lasso";
    case Algorithm::Irl1Admm:
      return "irl1_admm";
    case Algorithm::Irl1Ist:
      return "irl1_ist";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "lasso") return Algorithm::Lasso;
  if (name == "irl1_admm" || name == "irl1-admm") return Algorithm::Irl1Admm;
  if (name == "irl1_ist" || name == "irl1-ist") return Algorithm::Irl1Ist;
  throw ConfigError("unknown algorithm '" + std::string(name) +
                    "' (expected lasso, irl1_admm or irl1_ist)");
}

void BenchConfig::validate() const {
  if (n < 1 || m < 1) throw ConfigError("bench: n and m must be positive");
  if (trials < 1) throw ConfigError("bench: trials must be >= 1");
  for (int k : k_values)
    if (k < 0 || k > n)
      throw ConfigError("bench: k=" + std::to_string(k) + " outside [0, n]");
  if (algorithms.empty()) throw ConfigError("bench: no algorithms selected");
  const bool needs_penalty =
      std::any_of(algorithms.begin(), algorithms.end(),
                  [](Algorithm a) { return a != Algorithm::Lasso; });
  if (needs_penalty && penalties.empty())
    throw ConfigError("bench: reweighting algorithms need a penalty");
  if (!(lambda_noisefree > 0.0) || !(lambda_noisy > 0.0))
    throw ConfigError("bench: lambdas must be positive");
  if (!(tau > 0.0)) throw ConfigError("bench: tau must be positive");
  if (!(delta > 0.0)) throw ConfigError("bench: delta must be positive");
  if (max_reweight < 1 || ist_max_iter < 1)
    throw ConfigError("bench: iteration caps must be >= 1");
  if (snr_db && std::isnan(*snr_db))
    throw ConfigError("bench: snr_db must be a number");
  if (threads < 0) throw ConfigError("bench: threads must be >= 0");
  admm.validate();
}

bool is_recovered(const Vector& x_true, const Vector& x_hat) {
  if (x_true.size() != x_hat.size())
    throw DimensionError("is_recovered: length mismatch");
  if (x_true.size() == 0) return true;
  return (x_true - x_hat).cwiseAbs().maxCoeff() < kRecoveryTol;
}

double rse(const Vector& x_true, const Vector& x_hat) {
  if (x_true.size() != x_hat.size())
    throw DimensionError("rse: length mismatch");
  const double denom = x_true.squaredNorm();
  if (denom == 0.0)
    throw DomainError("rse: ground truth is zero, relative error undefined");
  return (x_true - x_hat).squaredNorm() / denom;
}

std::uint64_t trial_seed(std::uint64_t base_seed, int k, int trial) {
  const std::uint64_t key = (static_cast<std::uint64_t>(
                                 static_cast<std::uint32_t>(k))
                             << 32) |
                            static_cast<std::uint32_t>(trial);
  return base_seed ^ mix64(key);
}

std::vector<TrialRecord> run_bench(const BenchConfig& cfg) {
  cfg.validate();
  struct Job {
    int k;
    int trial;
  };
  std::vector<Job> jobs;
  for (int k : cfg.k_values)
    for (int t = 0; t < cfg.trials; ++t) jobs.push_back({k, t});

  std::vector<std::vector<TrialRecord>> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++)
      results[i] = run_trial(cfg, jobs[i].k, jobs[i].trial);
  };

  unsigned nthreads = cfg.threads > 0
                          ? static_cast<unsigned>(cfg.threads)
                          : std::max(1u, std::thread::hardware_concurrency());
  nthreads = std::min<unsigned>(nthreads, static_cast<unsigned>(jobs.size()));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(worker);
  }

  // Fixed (k, trial) order regardless of scheduling; k_values order kept.
  std::vector<TrialRecord> records;
  for (auto& r : results)
    for (auto& rec : r) records.push_back(std::move(rec));
  return records;
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "algorithm",   "penalty",    "k",
      "trial",       "seed",       "recovered",
      "rse",         "outer_iters", "total_inner_iters",
      "runtime_ms",  "lambda",     "snr_db",
      "error",       "rng"};
  return cols;
}

void write_csv(const std::vector<TrialRecord>& records,
               const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i)
    out << (i ? "," : "") << cols[i];
  out << "\r\n";
  for (const auto& r : records) {
    out << csv::quote_field(r.algorithm) << ',' << csv::quote_field(r.penalty)
        << ',' << r.k << ',' << r.trial << ',' << r.seed << ','
        << (r.recovered ? "true" : "false") << ',' << csv::format_real(r.rse)
        << ',' << r.outer_iters << ',' << r.total_inner_iters << ','
        << csv::format_real(r.runtime_ms) << ',' << csv::format_real(r.lambda)
        << ',' << format_optional(r.snr_db) << ','
        << csv::quote_field(r.error) << ',' << csv::quote_field(r.rng)
        << "\r\n";
  }
  out.flush();
  if (!out) throw IoError("write failed on " + path.string());
}

std::vector<TrialRecord> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw IoError(path.string() + ": empty file");
  if (csv::split_record(line) != csv_columns())
    throw IoError(path.string() + ": unexpected header");

  std::vector<TrialRecord> records;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    // Quoted fields may span lines.
    while (std::count(line.begin(), line.end(), '"') % 2 != 0) {
      std::string more;
      if (!std::getline(in, more))
        throw IoError(path.string() + ": unterminated quoted field");
      line += '\n';
      line += more;
    }
    if (line.empty() || line == "\r") continue;
    const auto f = csv::split_record(line);
    if (f.size() != csv_columns().size())
      throw IoError(path.string() + ":" + std::to_string(lineno) +
                    ": wrong number of fields");
    try {
      TrialRecord r;
      r.algorithm = f[0];
      r.penalty = f[1];
      r.k = std::stoi(f[2]);
      r.trial = std::stoi(f[3]);
      r.seed = std::stoull(f[4]);
      r.recovered = f[5] == "true";
      r.rse = csv::parse_real(f[6]);
      r.outer_iters = std::stoi(f[7]);
      r.total_inner_iters = std::stol(f[8]);
      r.runtime_ms = csv::parse_real(f[9]);
      r.lambda = csv::parse_real(f[10]);
      if (f[11] != "inf") r.snr_db = csv::parse_real(f[11]);
      r.error = f[12];
      r.rng = f[13];
      records.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw IoError(path.string() + ":" + std::to_string(lineno) + ": " +
                    e.what());
    }
  }
  return records;
}

std::vector<Aggregate> aggregate(const std::vector<TrialRecord>& records) {
  std::vector<Aggregate> out;
  std::map<std::tuple<int, std::string, std::string>, std::size_t> index;
  for (const auto& r : records) {
    auto key = std::make_tuple(r.k, r.algorithm, r.penalty);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, out.size()).first;
      out.push_back(Aggregate{r.k, r.algorithm, r.penalty});
    }
    Aggregate& a = out[it->second];
    ++a.count;
    if (!r.error.empty()) ++a.errors;
    a.recovery_rate += r.recovered ? 1.0 : 0.0;
    a.mean_rse += r.rse;
    a.mean_inner_iters += static_cast<double>(r.total_inner_iters);
    a.mean_outer_iters += r.outer_iters;
    a.mean_runtime_ms += r.runtime_ms;
  }
  for (auto& a : out) {
    const double c = a.count;
    a.recovery_rate /= c;
    a.mean_rse /= c;
    a.mean_inner_iters /= c;
    a.mean_outer_iters /= c;
    a.mean_runtime_ms /= c;
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Aggregate& l, const Aggregate& r) {
                     return l.k < r.k;
                   });
  return out;
}

}  // namespace lassorw
