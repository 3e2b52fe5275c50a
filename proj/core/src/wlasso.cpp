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

#include "lassorw/wlasso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "lassorw/errors.hpp"

namespace lassorw {
namespace {

void check_weights(const Problem& p, const Vector& w, const char* what) {
  if (w.size() != p.cols())
    throw DimensionError(std::string(what) + ": " + std::to_string(w.size()) +
                         " weights for " + std::to_string(p.cols()) +
                         " unknowns");
  if (!(w.array() >= 0.0).all() || !w.allFinite())
    throw DomainError(std::string(what) +
                      ": weights must be finite and nonnegative");
}

Matrix system_matrix(const Matrix& a, double rho, bool wide) {
  if (wide) {
    Matrix k = a * a.transpose() / rho;
    k.diagonal().array() += 1.0;
    return k;
  }
  Matrix k = a.transpose() * a;
  k.diagonal().array() += rho;
  return k;
}

// Solves the stationarity equations on the support of z with its signs
// fixed. Returns z unchanged unless the result is sign-consistent and has
// a KKT residual no larger than z's.
Vector polish_support(const Problem& p, const Vector& w, const Vector& z) {
  std::vector<Eigen::Index> support;
  for (Eigen::Index i = 0; i < z.size(); ++i)
    if (z(i) != 0.0) support.push_back(i);
  const auto s = static_cast<Eigen::Index>(support.size());
  if (s == 0 || s > p.rows()) return z;

  Matrix as(p.rows(), s);
  Vector rhs(s);
  for (Eigen::Index j = 0; j < s; ++j) {
    const Eigen::Index i = support[static_cast<std::size_t>(j)];
    as.col(j) = p.a.col(i);
    rhs(j) = -p.lambda * w(i) * (z(i) > 0.0 ? 1.0 : -1.0);
  }
  rhs.noalias() += as.transpose() * p.y;
  const Eigen::LLT<Matrix> llt(as.transpose() * as);
  if (llt.info() != Eigen::Success) return z;
  const Vector xs = llt.solve(rhs);

  Vector cand = Vector::Zero(z.size());
  for (Eigen::Index j = 0; j < s; ++j) {
    const Eigen::Index i = support[static_cast<std::size_t>(j)];
    if (!std::isfinite(xs(j)) || xs(j) * z(i) <= 0.0) return z;
    cand(i) = xs(j);
  }
  return kkt_residual(p, w, cand) <= kkt_residual(p, w, z) ? cand : z;
}

}  // namespace

Problem::Problem(Matrix a_in, Vector y_in, double lambda_in)
    : a(std::move(a_in)), y(std::move(y_in)), lambda(lambda_in) {
  if (a.rows() < 1 || a.cols() < 1)
    throw DimensionError("problem: sensing matrix must be nonempty");
  if (y.size() != a.rows())
    throw DimensionError("problem: " + std::to_string(y.size()) +
                         " measurements for a matrix with " +
                         std::to_string(a.rows()) + " rows");
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw ConfigError("problem: lambda must be positive");
  if (!a.allFinite() || !y.allFinite())
    throw DomainError("problem: non-finite entries");
}

void AdmmConfig::validate() const {
  if (!(rho > 0.0 && tol_abs > 0.0 && tol_rel > 0.0) || max_iter < 1)
    throw ConfigError("admm: rho, tol_abs, tol_rel and max_iter must be positive");
  if (adaptive_rho && !(rho_balance > 1.0 && rho_scale > 1.0))
    throw ConfigError("admm: rho_balance and rho_scale must exceed 1");
}

WeightedLassoAdmm::WeightedLassoAdmm(const Problem& p, AdmmConfig cfg)
    : problem_(&p),
      cfg_((cfg.validate(), cfg)),
      aty_(p.a.transpose() * p.y),
      wide_(p.rows() < p.cols()),
      rho_(cfg.rho),
      factor_(system_matrix(p.a, cfg.rho, wide_)) {}

void WeightedLassoAdmm::set_rho(double rho) {
  rho_ = rho;
  factor_ = SpdFactor(system_matrix(problem_->a, rho_, wide_));
}

Vector WeightedLassoAdmm::solve_x(const Vector& rhs) const {
  if (!wide_) return factor_.solve(rhs);
  // (A^T A + rho I)^{-1} = (I - A^T (I + A A^T / rho)^{-1} A / rho) / rho
  const Matrix& a = problem_->a;
  const Vector t = factor_.solve(a * rhs);
  return (rhs - a.transpose() * t / rho_) / rho_;
}

WLassoSolution WeightedLassoAdmm::solve(
    const Vector& w, const std::optional<Vector>& warm_start) {
  const Problem& p = *problem_;
  check_weights(p, w, "solve_admm");
  const Eigen::Index n = p.cols();
  const Vector lw = p.lambda * w;

  Vector z = Vector::Zero(n);
  if (warm_start) {
    if (warm_start->size() != n)
      throw DimensionError("solve_admm: warm start has wrong length");
    z = *warm_start;
  }
  // Scaled dual u = y_dual / rho; at a solution rho u = A^T (y - A z).
  Vector dual = (aty_ - p.a.transpose() * (p.a * z)).cwiseMax(-lw).cwiseMin(lw);

  const double sqrt_n = std::sqrt(static_cast<double>(n));
  const double kkt_tol = 10.0 * cfg_.tol_abs;

  WLassoSolution best;
  double best_score = std::numeric_limits<double>::infinity();
  Vector x(n), z_old(n);
  for (int it = 1; it <= cfg_.max_iter; ++it) {
    const double rho = rho_;
    Vector u = dual / rho;
    x = solve_x(aty_ + rho * (z - u));
    z_old = z;
    z = soft_threshold(x + u, lw / rho);
    u += x - z;
    dual = rho * u;

    const double r = (x - z).norm();
    const double s = rho * (z - z_old).norm();
    const double eps_pri =
        sqrt_n * cfg_.tol_abs + cfg_.tol_rel * std::max(x.norm(), z.norm());
    const double eps_dual = sqrt_n * cfg_.tol_abs + cfg_.tol_rel * dual.norm();

    const double score = std::max(r / eps_pri, s / eps_dual);
    if (score < best_score) {
      best_score = score;
      best = WLassoSolution{z, it, r, s, rho};
    }
    // The residual test alone lets the support iterate sit up to
    // tol_rel * ||x|| away from optimality; also demand the KKT certificate.
    if (r <= eps_pri && s <= eps_dual && kkt_residual(p, w, z) <= kkt_tol)
      return WLassoSolution{cfg_.polish ? polish_support(p, w, z) : z, it, r,
                            s, rho};

    if (cfg_.adaptive_rho) {
      if (r > cfg_.rho_balance * s) {
        set_rho(rho * cfg_.rho_scale);
      } else if (s > cfg_.rho_balance * r) {
        set_rho(rho / cfg_.rho_scale);
      }
    }
  }
  best.iters = cfg_.max_iter;
  std::ostringstream msg;
  msg << "solve_admm: no convergence in " << cfg_.max_iter
      << " iterations (primal " << best.primal_res << ", dual "
      << best.dual_res << ")";
  throw AdmmNotConverged(msg.str(), std::move(best));
}

WLassoSolution solve_admm(const Problem& p, const Vector& w,
                          const AdmmConfig& cfg,
                          const std::optional<Vector>& warm_start) {
  WeightedLassoAdmm solver(p, cfg);
  return solver.solve(w, warm_start);
}

double kkt_residual(const Problem& p, const Vector& w, const Vector& x) {
  if (w.size() != p.cols() || x.size() != p.cols())
    throw DimensionError("kkt_residual: weights/iterate length mismatch");
  const Vector c = p.a.transpose() * (p.a * x - p.y);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double t = p.lambda * w(i);
    const double v = x(i) != 0.0
                         ? std::abs(c(i) + t * (x(i) > 0.0 ? 1.0 : -1.0))
                         : std::max(0.0, std::abs(c(i)) - t);
    worst = std::max(worst, v);
  }
  return worst;
}

double weighted_lasso_objective(const Problem& p, const Vector& w,
                                const Vector& x) {
  if (w.size() != p.cols() || x.size() != p.cols())
    throw DimensionError("weighted_lasso_objective: length mismatch");
  return 0.5 * (p.y - p.a * x).squaredNorm() +
         p.lambda * w.dot(x.cwiseAbs());
}

}  // namespace lassorw
