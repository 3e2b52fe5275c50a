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

#include <optional>
#include <stdexcept>
#include <string>

#include "lassorw/linalg.hpp"

namespace lassorw {

/// min_x 1/2 ||y - A x||^2 + lambda * penalty(x), A is m x n.
struct Problem {
  Matrix a;
  Vector y;
  double lambda = 1.0;

  Problem(Matrix a_in, Vector y_in, double lambda_in);

  Eigen::Index rows() const { return a.rows(); }
  Eigen::Index cols() const { return a.cols(); }
};

struct AdmmConfig {
  double rho = 1.0;  // initial penalty parameter
  double tol_abs = 1e-8;
  double tol_rel = 1e-6;
  int max_iter = 50000;
  // Residual balancing: rescale rho by `rho_scale` whenever the primal and
  // dual residuals differ by more than `rho_balance`. Disabled if false.
  bool adaptive_rho = true;
  double rho_balance = 10.0;
  double rho_scale = 2.0;
  // On convergence, re-solve the stationarity equations on the detected
  // support with signs fixed; the result is kept only if it is
  // sign-consistent and does not raise the KKT residual.
  bool polish = true;

  void validate() const;
};

struct WLassoSolution {
  Vector x;
  int iters = 0;
  double primal_res = 0.0;
  double dual_res = 0.0;
  double rho = 0.0;  // penalty parameter in effect at exit
};

/// ADMM hit max_iter. Carries the iterate with the smallest scaled residual.
class AdmmNotConverged : public std::runtime_error {
 public:
  AdmmNotConverged(const std::string& what, WLassoSolution best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const WLassoSolution& best() const { return best_; }

 private:
  WLassoSolution best_;
};

/// Scaled-form ADMM for the weighted Lasso
///
///   min 1/2 ||y - A x||^2 + lambda sum_i w_i |z_i|   s.t.  x = z.
///
/// The x-update solves (A^T A + rho I) x = A^T y + rho (z - u). When m < n
/// the solve goes through the m x m system (I + A A^T / rho) instead. The
/// Cholesky factor depends only on A and rho, so one solver instance serves
/// every reweighting step of an outer loop; with adaptive rho, the adapted
/// value and its factor carry over to the next solve.
///
/// Holds a pointer to the problem, which must outlive the solver.
class WeightedLassoAdmm {
 public:
  WeightedLassoAdmm(const Problem& p, AdmmConfig cfg);

  /// Weights must be nonnegative (zero leaves a coordinate unpenalized).
  /// `warm_start` seeds z; the scaled dual is seeded from it as the
  /// correlation A^T (y - A z) / rho clipped to the thresholds.
  WLassoSolution solve(const Vector& w,
                       const std::optional<Vector>& warm_start = {});

  const AdmmConfig& config() const { return cfg_; }
  double rho() const { return rho_; }

 private:
  Vector solve_x(const Vector& rhs) const;
  void set_rho(double rho);

  const Problem* problem_;
  AdmmConfig cfg_;
  Vector aty_;
  bool wide_;
  double rho_;
  SpdFactor factor_;
};

WLassoSolution solve_admm(const Problem& p, const Vector& w,
                          const AdmmConfig& cfg = {},
                          const std::optional<Vector>& warm_start = {});

/// Subgradient optimality violation of x for the weighted Lasso. With
/// c = A^T (A x - y), the per-coordinate residual is |c_i + lambda w_i
/// sign(x_i)| on the support and max(0, |c_i| - lambda w_i) off it; the
/// maximum over coordinates is returned. Zero iff x is optimal.
double kkt_residual(const Problem& p, const Vector& w, const Vector& x);

/// 1/2 ||y - A x||^2 + lambda sum_i w_i |x_i|.
double weighted_lasso_objective(const Problem& p, const Vector& w,
                                const Vector& x);

}  // namespace lassorw
