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

#include "lassorw/irl1.hpp"

#include <cmath>
#include <sstream>

#include "lassorw/errors.hpp"

namespace lassorw {
namespace {

void check_iterate(const Problem& p, const Vector& x, const char* what) {
  if (x.size() != p.cols())
    throw DimensionError(std::string(what) + ": iterate of length " +
                         std::to_string(x.size()) + " for " +
                         std::to_string(p.cols()) + " unknowns");
}

void record(Trace& trace, const Problem& p, const PenaltySpec& spec,
            const Vector& x_prev, const Vector& w_prev, const Vector& x,
            const Vector& w) {
  const double dx = (x - x_prev).squaredNorm();
  const double dw = (w - w_prev).squaredNorm();
  trace.f_values.push_back(biconvex_F(p, spec, x, w));
  trace.step_norms.push_back(std::sqrt(dx));
  trace.joint_step_norms.push_back(std::sqrt(dx + dw));
  ++trace.outer_iters;
}

}  // namespace

void StopRule::validate() const {
  if (!(delta >= 0.0) || t_max < 1)
    throw ConfigError("stop rule: delta must be >= 0 and t_max >= 1");
}

double biconvex_F(const Problem& p, const PenaltySpec& spec, const Vector& x,
                  const Vector& w) {
  check_iterate(p, x, "biconvex_F");
  if (w.size() != p.cols())
    throw DimensionError("biconvex_F: weight vector has wrong length");
  double penalty = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    penalty += w(i) * std::abs(x(i)) + h_value(spec, w(i));
  return 0.5 * (p.y - p.a * x).squaredNorm() + p.lambda * penalty;
}

Vector reweight(const PenaltySpec& spec, const Vector& x) {
  Vector w(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) w(i) = weight(spec, std::abs(x(i)));
  return w;
}

RunResult run_irl1_admm(const Problem& p, const PenaltySpec& spec,
                        const Vector& x0, const StopRule& stop,
                        const AdmmConfig& cfg) {
  check_iterate(p, x0, "run_irl1_admm");
  stop.validate();
  WeightedLassoAdmm solver(p, cfg);

  RunResult res;
  Vector x = x0;
  Vector w = reweight(spec, x);
  for (int t = 1; t <= stop.t_max; ++t) {
    WLassoSolution sol;
    try {
      sol = solver.solve(w, x);
    } catch (const AdmmNotConverged& e) {
      res.trace.inner_iters_total += e.best().iters;
      res.x_hat = x;
      res.w_final = w;
      throw ReweightingFailed("run_irl1_admm: outer iteration " +
                                  std::to_string(t) + ": " + e.what(),
                              std::move(res));
    }
    res.trace.inner_iters_total += sol.iters;
    Vector w_next = reweight(spec, sol.x);
    record(res.trace, p, spec, x, w, sol.x, w_next);
    x = std::move(sol.x);
    w = std::move(w_next);
    if (res.trace.step_norms.back() < stop.delta) {
      res.converged = true;
      break;
    }
  }
  res.x_hat = std::move(x);
  res.w_final = std::move(w);
  return res;
}

Vector ist_update(const Problem& p, const Vector& w, const Vector& x,
                  double tau) {
  check_iterate(p, x, "ist_update");
  if (w.size() != p.cols())
    throw DimensionError("ist_update: weight vector has wrong length");
  if (!(tau > 0.0)) throw ConfigError("ist_update: tau must be positive");
  const Vector grad_step = x + tau * (p.a.transpose() * (p.y - p.a * x));
  return soft_threshold(grad_step, p.lambda * w);
}

Vector step_ist(const Problem& p, const PenaltySpec& spec, const Vector& x,
                double tau) {
  return ist_update(p, reweight(spec, x), x, tau);
}

double check_ist_step(const Problem& p, double tau) {
  if (!(tau > 0.0)) throw ConfigError("irl1 ist: tau must be positive");
  const double norm_sq = spectral_norm_sq(p.a);
  if (!(tau * norm_sq < 1.0)) {
    std::ostringstream msg;
    msg.precision(6);
    msg << "irl1 ist: step size tau=" << tau
        << " violates tau*||A||_2^2 < 1 (||A||_2^2=" << norm_sq
        << ", tau*||A||_2^2=" << tau * norm_sq
        << "); tau must be below " << 1.0 / norm_sq;
    throw ConfigError(msg.str());
  }
  return norm_sq;
}

RunResult run_irl1_ist(const Problem& p, const PenaltySpec& spec,
                       const Vector& x0, double tau, const StopRule& stop,
                       bool allow_unsafe_step) {
  check_iterate(p, x0, "run_irl1_ist");
  stop.validate();
  if (!allow_unsafe_step) {
    check_ist_step(p, tau);
  } else if (!(tau > 0.0)) {
    throw ConfigError("irl1 ist: tau must be positive");
  }

  RunResult res;
  Vector x = x0;
  Vector w = reweight(spec, x);
  for (int t = 1; t <= stop.t_max; ++t) {
    Vector x_next = ist_update(p, w, x, tau);
    Vector w_next = reweight(spec, x_next);
    record(res.trace, p, spec, x, w, x_next, w_next);
    ++res.trace.inner_iters_total;
    x = std::move(x_next);
    w = std::move(w_next);
    if (res.trace.step_norms.back() < stop.delta) {
      res.converged = true;
      break;
    }
  }
  res.x_hat = std::move(x);
  res.w_final = std::move(w);
  return res;
}

double surrogate_H(const Problem& p, const PenaltySpec& spec, const Vector& x,
                   const Vector& w, const Vector& b, double tau) {
  check_iterate(p, b, "surrogate_H");
  const Vector d = x - b;
  return biconvex_F(p, spec, x, w) + 0.5 * d.squaredNorm() -
         0.5 * tau * (p.a * d).squaredNorm();
}

}  // namespace lassorw
