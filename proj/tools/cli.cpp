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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <optional>

#include "CLI11.hpp"
#include "lassorw/bench.hpp"
#include "lassorw/checks.hpp"
#include "lassorw/config.hpp"
#include "lassorw/csv.hpp"
#include "lassorw/errors.hpp"
#include "lassorw/irl1.hpp"
#include "lassorw/probgen.hpp"

namespace lassorw::cli {
namespace {

struct SolveFlags {
  std::string matrix;
  std::string y;
  std::string x0;
  std::string penalty;  // log unless --algo lasso
  std::string algo = "irl1-admm";
  double lambda = 1e-5;
  double eps = 0.1;
  double q = 0.5;
  double alpha = 2.0;
  double beta = PenaltySpec::kDefaultBeta;
  double tau = 0.25;
  double delta = 1e-5;
  std::optional<int> max_outer;
  bool allow_unsafe_step = false;
  double rho = 1.0;
  int admm_max_iter = 50000;
  bool fixed_rho = false;
};

struct BenchFlags {
  std::string config;
  std::string out;
  std::optional<int> trials;
  std::optional<int> threads;
};

struct CheckFlags {
  std::string suite;
  std::string fault = "none";
};

void print_vector(std::ostream& out, const Vector& x) {
  for (Eigen::Index i = 0; i < x.size(); ++i)
    out << csv::format_real(x(i)) << '\n';
}

void print_summary(std::ostream& err, const std::string& algo, int outer,
                   long inner, double step, double f,
                   bool converged) {
  err << "algo=" << algo << " outer_iters=" << outer
      << " inner_iters=" << inner << " final_step_norm="
      << csv::format_real(step)
      << " final_F=" << csv::format_real(f)
      << " converged=" << (converged ? "true" : "false") << '\n';
}

int report_run(std::ostream& out, std::ostream& err, const std::string& algo,
               const Problem& p, const PenaltySpec& spec, const RunResult& r) {
  print_vector(out, r.x_hat);
  const auto& t = r.trace;
  const double step = t.step_norms.empty() ? std::nan("")
                                           : t.step_norms.back();
  print_summary(err, algo, t.outer_iters, t.inner_iters_total, step,
                biconvex_F(p, spec, r.x_hat, reweight(spec, r.x_hat)),
                r.converged);
  return r.converged ? kOk : kNotConverged;
}

int cmd_solve(const SolveFlags& f, std::ostream& out, std::ostream& err) {
  const bool lasso = f.algo == "lasso";
  if (f.penalty == "none" && !lasso) {
    err << "error: --penalty none requires --algo lasso\n";
    return kUsage;
  }
  if (lasso && !f.penalty.empty() && f.penalty != "none") {
    err << "error: --algo lasso takes no penalty (use --penalty none)\n";
    return kUsage;
  }
  Problem p(read_matrix_csv(f.matrix), read_vector_csv(f.y), f.lambda);
  Vector x0 = Vector::Zero(p.cols());
  if (!f.x0.empty()) {
    x0 = read_vector_csv(f.x0);
    if (x0.size() != p.cols())
      throw DimensionError("--x0 has " + std::to_string(x0.size()) +
                           " entries, A has " + std::to_string(p.cols()) +
                           " columns");
  }
  AdmmConfig admm;
  admm.rho = f.rho;
  admm.max_iter = f.admm_max_iter;
  admm.adaptive_rho = !f.fixed_rho;

  if (lasso) {
    const Vector w = Vector::Ones(p.cols());
    WLassoSolution sol;
    bool converged = true;
    try {
      sol = solve_admm(p, w, admm, x0);
    } catch (const AdmmNotConverged& e) {
      err << "warning: " << e.what() << '\n';
      sol = e.best();
      converged = false;
    }
    print_vector(out, sol.x);
    print_summary(err, f.algo, 1, sol.iters, (sol.x - x0).norm(),
                  weighted_lasso_objective(p, w, sol.x), converged);
    return converged ? kOk : kNotConverged;
  }

  const PenaltySpec spec =
      make_penalty(f.penalty.empty() ? "log" : f.penalty, f.eps, f.q, f.alpha,
                   f.beta);
  if (f.algo == "irl1-admm") {
    const StopRule stop{f.delta, f.max_outer.value_or(100)};
    try {
      return report_run(out, err, f.algo, p, spec,
                        run_irl1_admm(p, spec, x0, stop, admm));
    } catch (const ReweightingFailed& e) {
      err << "warning: " << e.what() << '\n';
      report_run(out, err, f.algo, p, spec, e.partial());
      return kNotConverged;
    }
  }
  const StopRule stop{f.delta, f.max_outer.value_or(100000)};
  return report_run(out, err, f.algo, p, spec,
                    run_irl1_ist(p, spec, x0, f.tau, stop, f.allow_unsafe_step));
}

void print_table(std::ostream& out, const std::vector<Aggregate>& rows) {
  out << std::left << std::setw(6) << "k" << std::setw(11) << "algorithm"
      << std::setw(9) << "penalty" << std::right << std::setw(7) << "trials"
      << std::setw(10) << "recovery" << std::setw(13) << "mean_rse"
      << std::setw(13) << "mean_inner" << std::setw(11) << "mean_outer"
      << std::setw(8) << "errors" << '\n';
  for (const auto& r : rows) {
    char rse[32];
    std::snprintf(rse, sizeof rse, "%.3e", r.mean_rse);
    out << std::left << std::setw(6) << r.k << std::setw(11) << r.algorithm
        << std::setw(9) << r.penalty << std::right << std::setw(7) << r.count
        << std::setw(10) << std::fixed << std::setprecision(3)
        << r.recovery_rate << std::setw(13) << rse << std::setw(13)
        << std::setprecision(1) << r.mean_inner_iters << std::setw(11)
        << std::setprecision(2) << r.mean_outer_iters << std::setw(8)
        << r.errors << '\n';
    out.unsetf(std::ios::floatfield);
  }
}

int cmd_bench(const BenchFlags& f, std::ostream& out, std::ostream& err) {
  BenchConfig cfg =
      f.config.empty() ? BenchConfig{} : load_bench_config(f.config);
  if (f.trials) cfg.trials = *f.trials;
  if (f.threads) cfg.threads = *f.threads;
  cfg.validate();
  const auto records = run_bench(cfg);
  write_csv(records, f.out);
  const auto failed = std::count_if(records.begin(), records.end(),
                                    [](const auto& r) { return !r.error.empty(); });
  if (failed > 0)
    err << "note: " << failed << " of " << records.size()
        << " solves hit an iteration cap (see the error column)\n";
  print_table(out, aggregate(records));
  return kOk;
}

int cmd_check(const CheckFlags& f, std::ostream& out, std::ostream& err) {
  const auto results = run_checks(f.suite, parse_fault(f.fault));
  bool ok = true;
  for (const auto& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << r.suite << " (" << r.detail
        << ")\n";
    ok = ok && r.passed;
  }
  if (!ok) err << "invariant check failed\n";
  return ok ? kOk : kInvariantFailed;
}

// CLI11 consumes arguments from the back of the vector.
std::vector<std::string> reversed(std::vector<std::string> args) {
  std::reverse(args.begin(), args.end());
  return args;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Reweighted l1 minimization for sparse recovery", "lassorw"};
  app.require_subcommand(1);

  SolveFlags sf;
  auto* solve = app.add_subcommand("solve", "Recover x from y = A x");
  solve->add_option("--matrix", sf.matrix, "CSV file with A (m rows)")
      ->required()->check(CLI::ExistingFile);
  solve->add_option("--y", sf.y, "CSV file with y (m values)")
      ->required()->check(CLI::ExistingFile);
  solve->add_option("--x0", sf.x0, "CSV file with the starting point")
      ->check(CLI::ExistingFile);
  solve->add_option("--penalty", sf.penalty,
                    "log, lq, mcp or none (default: log, none for lasso)")
      ->check(CLI::IsMember({"log", "lq", "mcp", "none"}));
  solve->add_option("--algo", sf.algo, "lasso, irl1-admm or irl1-ist")
      ->check(CLI::IsMember({"lasso", "irl1-admm", "irl1-ist"}))
      ->capture_default_str();
  solve->add_option("--lambda", sf.lambda)->capture_default_str();
  solve->add_option("--eps", sf.eps)->capture_default_str();
  solve->add_option("--q", sf.q)->capture_default_str();
  solve->add_option("--alpha", sf.alpha)->capture_default_str();
  solve->add_option("--beta", sf.beta, "magnitude cap for log and lq")
      ->capture_default_str();
  solve->add_option("--tau", sf.tau, "IST step size")->capture_default_str();
  solve->add_option("--delta", sf.delta, "outer stopping tolerance")
      ->capture_default_str();
  solve->add_option("--max-outer", sf.max_outer,
                    "outer iteration cap (100 for irl1-admm, 1e5 for irl1-ist)");
  solve->add_flag("--allow-unsafe-step", sf.allow_unsafe_step,
                  "skip the tau ||A||^2 < 1 check");
  solve->add_option("--rho", sf.rho, "initial ADMM penalty")
      ->capture_default_str();
  solve->add_option("--admm-max-iter", sf.admm_max_iter)->capture_default_str();
  solve->add_flag("--fixed-rho", sf.fixed_rho, "disable residual balancing");

  BenchFlags bf;
  auto* bench = app.add_subcommand("bench", "Run the recovery sweep");
  bench->add_option("--config", bf.config, "JSON config; omitted keys keep defaults")
      ->check(CLI::ExistingFile);
  bench->add_option("--out", bf.out, "CSV output path")->required();
  bench->add_option("--trials", bf.trials, "override the trial count");
  bench->add_option("--threads", bf.threads, "worker threads (0: all cores)");

  CheckFlags cf;
  auto* check = app.add_subcommand("check", "Run the invariant suites");
  check->add_option("--suite", cf.suite, "module or module.property filter");
  check->add_option("--inject-fault", cf.fault, "none or h-constant")
      ->check(CLI::IsMember({"none", "h-constant"}))
      ->capture_default_str();

  try {
    app.parse(reversed(args));
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (*solve) return cmd_solve(sf, out, err);
    if (*bench) return cmd_bench(bf, out, err);
    return cmd_check(cf, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

int run_gen(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Write a synthetic sparse recovery instance", "lassorw-gen"};
  InstanceSpec spec;
  std::string dir;
  app.add_option("--n", spec.n)->capture_default_str();
  app.add_option("--m", spec.m)->capture_default_str();
  app.add_option("--k", spec.k)->capture_default_str();
  app.add_option("--seed", spec.seed)->capture_default_str();
  app.add_option("--snr-db", spec.snr_db, "omit for noise-free measurements");
  app.add_option("--out-dir", dir, "directory for A.csv, y.csv, x_true.csv")
      ->required();
  try {
    app.parse(reversed(args));
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }
  try {
    const Instance inst = gen_instance(spec);
    const std::filesystem::path root(dir);
    std::filesystem::create_directories(root);
    write_matrix_csv(root / "A.csv", inst.a);
    write_vector_csv(root / "y.csv", inst.y);
    write_vector_csv(root / "x_true.csv", inst.x_true);
    out << (root / "A.csv").string() << '\n'
        << (root / "y.csv").string() << '\n'
        << (root / "x_true.csv").string() << '\n';
    return kOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace lassorw::cli
