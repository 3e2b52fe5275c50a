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

#include "lassorw/checks.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include <Eigen/QR>

#include "lassorw/bench.hpp"
#include "lassorw/errors.hpp"
#include "lassorw/irl1.hpp"
#include "lassorw/penalty.hpp"
#include "lassorw/probgen.hpp"
#include "lassorw/wlasso.hpp"

namespace lassorw {
namespace {

class Violation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename... Args>
[[noreturn]] void fail(const Args&... args) {
  std::ostringstream msg;
  msg.precision(6);
  (msg << ... << args);
  throw Violation(msg.str());
}

std::string sci(double v) {
  std::ostringstream s;
  s.precision(2);
  s << std::scientific << v;
  return s.str();
}

const std::vector<PenaltySpec>& reference_penalties() {
  static const std::vector<PenaltySpec> specs = {
      PenaltySpec::log(0.1), PenaltySpec::lq(0.1, 0.5), PenaltySpec::mcp(2.0)};
  return specs;
}

double uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * rng.uniform();
}

Vector gaussian(Rng& rng, Eigen::Index n, double sd = 1.0) {
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = sd * rng.normal();
  return v;
}

Matrix gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols, double sd) {
  Matrix a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = sd * rng.normal();
  return a;
}

// Interior sample range for the magnitude argument of g.
double magnitude_cap(const PenaltySpec& spec) {
  return std::min(spec.beta(), 10.0);
}

// --- penalty ---------------------------------------------------------------

std::string penalty_inverse_identity(Fault fault) {
  Rng rng(101);
  const double shift = fault == Fault::HConstant ? 1e-3 : 0.0;
  double worst = 0.0;
  for (const auto& spec : reference_penalties()) {
    const auto [lo, hi] = weight_bounds(spec);
    for (int i = 0; i < 100; ++i) {
      const double w = uniform(rng, lo, hi);
      if (!(w > lo && w < hi)) continue;
      const double s = -(h_prime(spec, w) + shift);
      const double err = std::abs(weight(spec, std::max(s, 0.0)) - w);
      worst = std::max(worst, err);
      if (!(err < 1e-10))
        fail(to_string(spec.kind()), ": |g'(-h'(w)) - w| = ", err, " at w=", w);
    }
  }
  return "max error " + sci(worst);
}

std::string penalty_monotone_weights(Fault) {
  Rng rng(102);
  for (const auto& spec : reference_penalties()) {
    for (int i = 0; i < 200; ++i) {
      double s1 = uniform(rng, 0.0, magnitude_cap(spec));
      double s2 = uniform(rng, 0.0, magnitude_cap(spec));
      if (s1 == s2) continue;
      if (s1 > s2) std::swap(s1, s2);
      if (s2 >= spec.beta()) continue;
      if (!(weight(spec, s1) > weight(spec, s2)))
        fail(to_string(spec.kind()), ": weight not decreasing between ", s1,
             " and ", s2);
    }
  }
  return "ok";
}

std::string penalty_h_convexity(Fault) {
  Rng rng(103);
  for (const auto& spec : reference_penalties()) {
    const auto [lo, hi] = weight_bounds(spec);
    for (int i = 0; i < 200; ++i) {
      const double w1 = uniform(rng, lo, hi);
      const double w2 = uniform(rng, lo, hi);
      const double mid = h_value(spec, 0.5 * (w1 + w2));
      const double chord = 0.5 * (h_value(spec, w1) + h_value(spec, w2));
      const double tol = 1e-12 * (1.0 + std::abs(chord));
      if (mid > chord + tol)
        fail(to_string(spec.kind()), ": h not convex at ", w1, ", ", w2);
      if (std::abs(w1 - w2) > 1e-3 * (hi - lo) && !(mid < chord))
        fail(to_string(spec.kind()), ": h not strictly convex at ", w1, ", ",
             w2);
    }
  }
  return "ok";
}

std::string penalty_finite_difference(Fault) {
  Rng rng(104);
  constexpr double kDelta = 1e-6;
  double worst = 0.0;
  for (const auto& spec : reference_penalties()) {
    for (int i = 0; i < 100; ++i) {
      const double s = uniform(rng, 1e-3, magnitude_cap(spec) - 1e-3);
      const double fd =
          (g_value(spec, s + kDelta) - g_value(spec, s - kDelta)) /
          (2.0 * kDelta);
      const double err = std::abs(fd - weight(spec, s));
      worst = std::max(worst, err);
      if (!(err < 1e-6))
        fail(to_string(spec.kind()), ": central difference off by ", err,
             " at s=", s);
    }
  }
  return "max error " + sci(worst);
}

// --- linalg ----------------------------------------------------------------

std::string linalg_adjoint(Fault) {
  Rng rng(201);
  for (int t = 0; t < 50; ++t) {
    const Matrix a = gaussian(rng, 17, 29, 1.0);
    const Vector v = gaussian(rng, 29);
    const Vector u = gaussian(rng, 17);
    const double lhs = matvec(a, v).dot(u);
    const double rhs = v.dot(matvec_t(a, u));
    if (std::abs(lhs - rhs) > 1e-12 * std::max(1.0, std::abs(lhs)))
      fail("<Av,u>=", lhs, " vs <v,A^T u>=", rhs);
  }
  return "ok";
}

std::string linalg_soft_threshold_nonexpansive(Fault) {
  Rng rng(202);
  for (int t = 0; t < 1000; ++t) {
    const double th = std::abs(rng.normal());
    Vector a(1), b(1), theta(1);
    a << 3.0 * rng.normal();
    b << 3.0 * rng.normal();
    theta << th;
    const double d = std::abs(soft_threshold(a, theta)(0) -
                              soft_threshold(b, theta)(0));
    if (d > std::abs(a(0) - b(0)) + 1e-15)
      fail("|S(a)-S(b)|=", d, " > |a-b|=", std::abs(a(0) - b(0)));
  }
  return "ok";
}

std::string linalg_power_iteration_monotone(Fault) {
  Rng rng(203);
  for (int t = 0; t < 10; ++t) {
    const Matrix a = gaussian(rng, 20, 45, 1.0);
    const auto est = spectral_norm_sq_trace(a);
    for (std::size_t i = 1; i < est.history.size(); ++i)
      if (est.history[i] < est.history[i - 1] - 1e-14 * est.history[i - 1])
        fail("Rayleigh quotient decreased at sweep ", i);
  }
  return "ok";
}

// --- wlasso ----------------------------------------------------------------

Problem random_problem(Rng& rng, int m, int n, double lambda) {
  Matrix a = gaussian(rng, m, n, 1.0 / std::sqrt(static_cast<double>(m)));
  Vector y = gaussian(rng, m);
  return Problem(std::move(a), std::move(y), lambda);
}

Vector random_weights(Rng& rng, Eigen::Index n) {
  Vector w(n);
  for (Eigen::Index i = 0; i < n; ++i) w(i) = uniform(rng, 0.1, 2.0);
  return w;
}

std::string wlasso_kkt_optimality(Fault) {
  Rng rng(301);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const Problem p = random_problem(rng, 20, 50, 0.05);
    const Vector w = random_weights(rng, p.cols());
    const auto sol = solve_admm(p, w);
    const double r = kkt_residual(p, w, sol.x);
    worst = std::max(worst, r);
    if (r > 1e-6) fail("instance ", t, ": KKT residual ", r);
  }
  return "max residual " + sci(worst);
}

std::string wlasso_closed_form(Fault) {
  Rng rng(302);
  for (int t = 0; t < 10; ++t) {
    // Orthonormal A from a QR factorization.
    const Matrix g = gaussian(rng, 12, 12, 1.0);
    const Matrix q = Eigen::HouseholderQR<Matrix>(g).householderQ();
    const Problem p(q, gaussian(rng, 12), 0.3);
    const Vector w = random_weights(rng, 12);
    const Vector expect = soft_threshold(q.transpose() * p.y, p.lambda * w);
    const auto sol = solve_admm(p, w);
    const double err = (sol.x - expect).cwiseAbs().maxCoeff();
    if (err > 1e-8) fail("instance ", t, ": deviation ", err);
  }
  return "ok";
}

std::string wlasso_scaling(Fault) {
  Rng rng(303);
  for (int t = 0; t < 10; ++t) {
    const Problem p = random_problem(rng, 15, 30, 0.1);
    const Problem half(p.a, p.y, p.lambda / 2.0);
    const Vector w = random_weights(rng, p.cols());
    AdmmConfig cfg;
    cfg.tol_abs = 1e-11;
    cfg.tol_rel = 1e-10;
    cfg.max_iter = 100000;
    const auto a = solve_admm(p, w, cfg);
    const auto b = solve_admm(half, 2.0 * w, cfg);
    const double err = (a.x - b.x).cwiseAbs().maxCoeff();
    if (err > 1e-8) fail("instance ", t, ": (lambda, w) vs (lambda/2, 2w) differ by ", err);
  }
  return "ok";
}

std::string wlasso_objective_descent(Fault) {
  Rng rng(304);
  for (int t = 0; t < 20; ++t) {
    const Problem p = random_problem(rng, 20, 40, 0.05);
    const Vector w = random_weights(rng, p.cols());
    const auto sol = solve_admm(p, w);
    const double f = weighted_lasso_objective(p, w, sol.x);
    const double f0 = weighted_lasso_objective(p, w, Vector::Zero(p.cols()));
    if (f > f0 + 1e-9) fail("instance ", t, ": objective ", f, " > ", f0, " at 0");
  }
  return "ok";
}

// --- irl1 ------------------------------------------------------------------

Problem sparse_problem(std::uint64_t seed, int n, int m, int k, double lambda) {
  const Instance inst = gen_instance(InstanceSpec{n, m, k, {}, seed});
  return Problem(inst.a, inst.y, lambda);
}

std::string irl1_acs_descent(Fault) {
  const AdmmConfig cfg;
  for (const auto& spec : reference_penalties()) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Problem p = sparse_problem(400 + seed, 64, 32, 6, 1e-3);
      const auto res =
          run_irl1_admm(p, spec, Vector::Zero(p.cols()), {0.0, 15}, cfg);
      const auto& f = res.trace.f_values;
      for (std::size_t i = 1; i < f.size(); ++i)
        if (f[i] > f[i - 1] + 10.0 * cfg.tol_abs)
          fail(to_string(spec.kind()), " seed ", seed, ": F rose by ",
               f[i] - f[i - 1], " at outer step ", i + 1);
    }
  }
  return "ok";
}

std::string irl1_partial_optimum(Fault) {
  for (const auto& spec : reference_penalties()) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Problem p = sparse_problem(410 + seed, 64, 32, 6, 1e-3);
      const auto res = run_irl1_admm(p, spec, Vector::Zero(p.cols()), {1e-9, 200});
      const double r = kkt_residual(p, res.w_final, res.x_hat);
      if (r > 1e-6)
        fail(to_string(spec.kind()), " seed ", seed, ": KKT residual ", r);
      if (res.w_final != reweight(spec, res.x_hat))
        fail(to_string(spec.kind()), " seed ", seed,
             ": final weights are not g'(|x_hat|)");
    }
  }
  return "ok";
}

std::string irl1_reweight_minimizes(Fault) {
  Rng rng(420);
  for (const auto& spec : reference_penalties()) {
    for (int t = 0; t < 5; ++t) {
      const Problem p = random_problem(rng, 8, 12, 0.2);
      const Vector x = gaussian(rng, p.cols());
      const double best = biconvex_F(p, spec, x, reweight(spec, x));
      const auto [lo, hi] = weight_bounds(spec);
      for (int s = 0; s < 100; ++s) {
        Vector w(p.cols());
        for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = uniform(rng, lo, hi);
        if (biconvex_F(p, spec, x, w) < best - 1e-12 * std::abs(best))
          fail(to_string(spec.kind()), ": random weights beat g'(|x|)");
      }
    }
  }
  return "ok";
}

std::string irl1_ist_uniform_descent(Fault) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Problem p = sparse_problem(430 + seed, 64, 32, 6, 1e-3);
    const double tau = 0.9 / spectral_norm_sq(p.a);
    const Vector w = Vector::Constant(p.cols(), 1.5);
    Vector x = Vector::Zero(p.cols());
    double prev = weighted_lasso_objective(p, w, x);
    for (int it = 0; it < 500; ++it) {
      x = ist_update(p, w, x, tau);
      const double f = weighted_lasso_objective(p, w, x);
      if (f > prev + 1e-12)
        fail("seed ", seed, ": objective rose by ", f - prev, " at step ", it);
      prev = f;
    }
  }
  return "ok";
}

std::string irl1_ist_fixed_point(Fault) {
  for (const auto& spec : reference_penalties()) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const Problem p = sparse_problem(440 + seed, 48, 24, 4, 1e-3);
      const double tau = 0.9 / spectral_norm_sq(p.a);
      // Iterate to a numerical fixed point, then demand idempotence there.
      auto res = run_irl1_ist(p, spec, Vector::Zero(p.cols()), tau, {0.0, 20000});
      Vector x = res.x_hat;
      for (int i = 0; i < 50; ++i) {
        const Vector next = step_ist(p, spec, x, tau);
        if (next == x) break;
        x = next;
      }
      const Vector once = step_ist(p, spec, x, tau);
      if (once != x) continue;  // fixed point not reached in floating point
      if (step_ist(p, spec, once, tau) != x)
        fail(to_string(spec.kind()), " seed ", seed,
             ": fixed point not idempotent");
    }
  }
  // A point that is fixed by construction: zero with thresholds covering
  // the gradient step.
  const Problem p(Matrix::Identity(3, 3), Vector::Constant(3, 1e-6), 1.0);
  const Vector zero = Vector::Zero(3);
  const auto spec = PenaltySpec::log(0.1);
  if (step_ist(p, spec, zero, 0.5) != zero ||
      step_ist(p, spec, step_ist(p, spec, zero, 0.5), 0.5) != zero)
    fail("zero is not a fixed point although thresholds dominate");
  return "ok";
}

// --- probgen ---------------------------------------------------------------

std::string probgen_support(Fault) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int k = static_cast<int>(seed % 40);
    const Instance inst = gen_instance(InstanceSpec{64, 20, k, {}, seed});
    int nnz = 0;
    for (Eigen::Index i = 0; i < inst.x_true.size(); ++i)
      nnz += inst.x_true(i) != 0.0;
    if (nnz != k || static_cast<int>(inst.support.size()) != k)
      fail("seed ", seed, ": support size ", nnz, " != k=", k);
    for (std::size_t i = 1; i < inst.support.size(); ++i)
      if (!(inst.support[i - 1] < inst.support[i]))
        fail("seed ", seed, ": support not sorted-unique");
  }
  return "ok";
}

std::string probgen_determinism(Fault) {
  for (std::uint64_t seed : {0ULL, 7ULL, 123456789ULL}) {
    const InstanceSpec spec{40, 15, 5, 25.0, seed};
    const Instance a = gen_instance(spec);
    const Instance b = gen_instance(spec);
    if (a.a != b.a || a.x_true != b.x_true || a.y != b.y || a.noise != b.noise)
      fail("seed ", seed, ": regenerated instance differs");
    if (a.y != Vector(a.a * a.x_true + a.noise))
      fail("seed ", seed, ": y != A x + noise");
  }
  return "ok";
}

// --- bench -----------------------------------------------------------------

std::string bench_record_count(Fault) {
  BenchConfig cfg;
  cfg.n = 24;
  cfg.m = 12;
  cfg.k_values = {1, 3};
  cfg.trials = 2;
  cfg.lambda_noisefree = 1e-3;
  cfg.ist_max_iter = 2000;
  cfg.threads = 1;
  const auto records = run_bench(cfg);
  const std::size_t expect = cfg.k_values.size() * cfg.trials *
                             (1 + 2 * cfg.penalties.size());
  if (records.size() != expect)
    fail(records.size(), " records, expected ", expect);
  for (const auto& r : records) {
    if (r.seed != trial_seed(cfg.base_seed, r.k, r.trial))
      fail("record seed does not match (k, trial)");
    if (r.algorithm == "lasso" && r.penalty != "none")
      fail("lasso record carries penalty ", r.penalty);
  }
  return std::to_string(records.size()) + " records";
}

struct Suite {
  const char* name;
  std::string (*fn)(Fault);
};

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all = {
      {"penalty.inverse_identity", penalty_inverse_identity},
      {"penalty.monotone_weights", penalty_monotone_weights},
      {"penalty.h_convexity", penalty_h_convexity},
      {"penalty.finite_difference", penalty_finite_difference},
      {"linalg.adjoint", linalg_adjoint},
      {"linalg.soft_threshold_nonexpansive", linalg_soft_threshold_nonexpansive},
      {"linalg.power_iteration_monotone", linalg_power_iteration_monotone},
      {"wlasso.kkt_optimality", wlasso_kkt_optimality},
      {"wlasso.closed_form", wlasso_closed_form},
      {"wlasso.scaling", wlasso_scaling},
      {"wlasso.objective_descent", wlasso_objective_descent},
      {"irl1.acs_descent", irl1_acs_descent},
      {"irl1.partial_optimum", irl1_partial_optimum},
      {"irl1.reweight_minimizes", irl1_reweight_minimizes},
      {"irl1.ist_uniform_descent", irl1_ist_uniform_descent},
      {"irl1.ist_fixed_point", irl1_ist_fixed_point},
      {"probgen.support", probgen_support},
      {"probgen.determinism", probgen_determinism},
      {"bench.record_count", bench_record_count},
  };
  return all;
}

bool matches(std::string_view name, std::string_view filter) {
  if (filter.empty() || name == filter) return true;
  return name.size() > filter.size() && name.substr(0, filter.size()) == filter &&
         name[filter.size()] == '.';
}

}  // namespace

Fault parse_fault(std::string_view name) {
  if (name.empty() || name == "none") return Fault::None;
  if (name == "h-constant") return Fault::HConstant;
  throw ConfigError("unknown fault '" + std::string(name) +
                    "' (expected none or h-constant)");
}

std::vector<std::string> check_suite_names() {
  std::vector<std::string> names;
  for (const auto& s : suites()) names.emplace_back(s.name);
  return names;
}

std::vector<CheckResult> run_checks(std::string_view filter, Fault fault) {
  std::vector<CheckResult> results;
  for (const auto& s : suites()) {
    if (!matches(s.name, filter)) continue;
    CheckResult r;
    r.suite = s.name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      r.detail = s.fn(fault);
      r.passed = true;
    } catch (const std::exception& e) {
      r.detail = e.what();
      r.passed = false;
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                    .count();
    results.push_back(std::move(r));
  }
  if (results.empty())
    throw ConfigError("no check suite matches '" + std::string(filter) + "'");
  return results;
}

}  // namespace lassorw
