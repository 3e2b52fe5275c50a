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

#include <stdexcept>
#include <string>
#include <vector>

#include "lassorw/linalg.hpp"
#include "lassorw/penalty.hpp"
#include "lassorw/wlasso.hpp"

namespace lassorw {

/// Outer stopping rule: stop once ||x(t) - x(t-1)||_2 < delta, or after
/// t_max outer iterations. delta = 0 disables the change test.
struct StopRule {
  double delta = 1e-5;
  int t_max = 100;

  void validate() const;
};

struct Trace {
  std::vector<double> f_values;           // F(x(t), w(t)), w(t) = g'(|x(t)|)
  std::vector<double> step_norms;         // ||x(t) - x(t-1)||_2
  std::vector<double> joint_step_norms;   // ||(x(t), w(t)) - (x(t-1), w(t-1))||_2
  int outer_iters = 0;
  long inner_iters_total = 0;
};

struct RunResult {
  Vector x_hat;
  Vector w_final;
  Trace trace;
  bool converged = false;
};

/// Inner solver failure inside a reweighting driver; carries the run up to
/// the failing step.
class ReweightingFailed : public std::runtime_error {
 public:
  ReweightingFailed(const std::string& what, RunResult partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const RunResult& partial() const { return partial_; }

 private:
  RunResult partial_;
};

/// F(x, w) = 1/2 ||y - A x||^2 + lambda sum_i [w_i |x_i| + h(w_i)].
/// Biconvex in (x, w); throws DomainError if some w_i leaves the weight box.
double biconvex_F(const Problem& p, const PenaltySpec& spec, const Vector& x,
                  const Vector& w);

/// w_i = g'(|x_i|): the exact minimizer of F(x, .) over the weight box.
Vector reweight(const PenaltySpec& spec, const Vector& x);

/// Lasso IRL1. Alternates w(t) = g'(|x(t)|) with the weighted Lasso solve
/// x(t+1) = argmin 1/2 ||y - A x||^2 + lambda sum_i w_i(t) |x_i|, which is
/// alternated convex search on F. Each solve is warm-started at x(t) and
/// reuses one ADMM factorization.
RunResult run_irl1_admm(const Problem& p, const PenaltySpec& spec,
                        const Vector& x0, const StopRule& stop,
                        const AdmmConfig& cfg = {});

/// One reweighted IST step: S_{lambda w}[x + tau A^T (y - A x)] with
/// w = g'(|x|). Thresholds are lambda w_i, not tau lambda w_i.
Vector step_ist(const Problem& p, const PenaltySpec& spec, const Vector& x,
                double tau);

/// The x-block of step_ist for given weights.
Vector ist_update(const Problem& p, const Vector& w, const Vector& x,
                  double tau);

/// Throws ConfigError unless tau ||A||_2^2 < 1. Returns ||A||_2^2.
double check_ist_step(const Problem& p, double tau);

/// Lasso IRL1 IST: iterates step_ist. The step size is validated against
/// tau ||A||_2^2 < 1 unless `allow_unsafe_step` is set.
RunResult run_irl1_ist(const Problem& p, const PenaltySpec& spec,
                       const Vector& x0, double tau, const StopRule& stop,
                       bool allow_unsafe_step = false);

/// H(x, w, b) = F(x, w) + 1/2 ||x - b||^2 - tau/2 ||A (x - b)||^2.
double surrogate_H(const Problem& p, const PenaltySpec& spec, const Vector& x,
                   const Vector& w, const Vector& b, double tau);

}  // namespace lassorw
