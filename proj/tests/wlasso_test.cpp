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

#include <gtest/gtest.h>

#include <Eigen/QR>
#include <random>

#include "lassorw/errors.hpp"

namespace lassorw {
namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

Matrix gaussian(std::mt19937_64& gen, int rows, int cols, double sd) {
  std::normal_distribution<double> n(0.0, sd);
  Matrix a(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a(i, j) = n(gen);
  return a;
}

// Cyclic coordinate descent run to a fixed point; each coordinate update is
// the exact one-dimensional minimizer.
Vector coordinate_descent(const Problem& p, const Vector& w) {
  Vector x = Vector::Zero(p.cols());
  Vector r = p.y;
  for (int sweep = 0; sweep < 100000; ++sweep) {
    double change = 0.0;
    for (Eigen::Index j = 0; j < p.cols(); ++j) {
      const double nj = p.a.col(j).squaredNorm();
      const double rho = p.a.col(j).dot(r) + nj * x(j);
      const double t = p.lambda * w(j);
      const double xj = rho > t ? (rho - t) / nj : rho < -t ? (rho + t) / nj : 0.0;
      r -= p.a.col(j) * (xj - x(j));
      change = std::max(change, std::abs(xj - x(j)));
      x(j) = xj;
    }
    if (change < 1e-15) break;
  }
  return x;
}

TEST(SolveAdmm, IdentityReducesToSoftThreshold) {
  const Problem p(Matrix::Identity(2, 2), vec({3, 0.5}), 1.0);
  const auto a = solve_admm(p, vec({1, 1}));
  EXPECT_NEAR(a.x(0), 2.0, 1e-8);
  EXPECT_NEAR(a.x(1), 0.0, 1e-8);
  const auto b = solve_admm(p, vec({0.1, 2}));
  EXPECT_NEAR(b.x(0), 2.9, 1e-8);
  EXPECT_NEAR(b.x(1), 0.0, 1e-8);
}

TEST(SolveAdmm, TinyInstanceMatchesCoordinateDescent) {
  std::mt19937_64 gen(21);
  for (int t = 0; t < 20; ++t) {
    const Problem p(gaussian(gen, 2, 3, 1.0), gaussian(gen, 2, 1, 1.0), 0.1);
    const Vector w = Vector::Ones(3);
    const auto sol = solve_admm(p, w);
    EXPECT_LE(kkt_residual(p, w, sol.x), 1e-6);
    // The 2 x 3 problem need not have a unique minimizer, so compare values.
    const Vector ref = coordinate_descent(p, w);
    EXPECT_NEAR(weighted_lasso_objective(p, w, sol.x),
                weighted_lasso_objective(p, w, ref), 1e-9);
  }
}

TEST(SolveAdmm, WideAndTallPathsAgree) {
  std::mt19937_64 gen(22);
  for (int t = 0; t < 5; ++t) {
    const Problem wide(gaussian(gen, 15, 30, 0.3), gaussian(gen, 15, 1, 1.0), 0.05);
    std::uniform_real_distribution<double> u(0.2, 2.0);
    Vector w(30);
    for (auto& v : w) v = u(gen);
    const auto sol = solve_admm(wide, w);
    EXPECT_LE((sol.x - coordinate_descent(wide, w)).cwiseAbs().maxCoeff(), 1e-6);

    const Problem tall(gaussian(gen, 30, 15, 0.3), gaussian(gen, 30, 1, 1.0), 0.05);
    const Vector wt = w.head(15);
    const auto st = solve_admm(tall, wt);
    EXPECT_LE((st.x - coordinate_descent(tall, wt)).cwiseAbs().maxCoeff(), 1e-6);
  }
}

TEST(SolveAdmm, OrthonormalClosedForm) {
  std::mt19937_64 gen(23);
  for (int t = 0; t < 10; ++t) {
    const Matrix q = Eigen::HouseholderQR<Matrix>(gaussian(gen, 10, 10, 1.0)).householderQ();
    const Problem p(q, gaussian(gen, 10, 1, 1.0), 0.2);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    Vector w(10);
    for (auto& v : w) v = u(gen);
    const auto sol = solve_admm(p, w);
    EXPECT_LE((sol.x - soft_threshold(q.transpose() * p.y, p.lambda * w))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-8);
  }
}

TEST(SolveAdmm, ZeroWeightLeavesCoordinateFree) {
  const Problem p(Matrix::Identity(2, 2), vec({0.3, 0.3}), 1.0);
  const auto sol = solve_admm(p, vec({0, 1}));
  EXPECT_NEAR(sol.x(0), 0.3, 1e-8);
  EXPECT_NEAR(sol.x(1), 0.0, 1e-8);
}

TEST(SolveAdmm, SolverInstanceIsReusable) {
  std::mt19937_64 gen(24);
  const Problem p(gaussian(gen, 20, 40, 0.2), gaussian(gen, 20, 1, 1.0), 0.02);
  WeightedLassoAdmm solver(p, {});
  const Vector w1 = Vector::Ones(40);
  const Vector w2 = Vector::Constant(40, 0.5);
  const auto a = solver.solve(w1);
  const auto b = solver.solve(w2, a.x);
  EXPECT_LE(kkt_residual(p, w1, a.x), 1e-6);
  EXPECT_LE(kkt_residual(p, w2, b.x), 1e-6);
}

TEST(SolveAdmm, IterationCapCarriesBestIterate) {
  std::mt19937_64 gen(25);
  const Problem p(gaussian(gen, 20, 40, 0.2), gaussian(gen, 20, 1, 1.0), 1e-6);
  AdmmConfig cfg;
  cfg.max_iter = 3;
  try {
    solve_admm(p, Vector::Ones(40), cfg);
    FAIL() << "expected AdmmNotConverged";
  } catch (const AdmmNotConverged& e) {
    EXPECT_EQ(e.best().x.size(), 40);
    EXPECT_TRUE(e.best().x.allFinite());
  }
}

TEST(SolveAdmm, RejectsBadInput) {
  const Problem p(Matrix::Identity(2, 2), vec({1, 1}), 1.0);
  EXPECT_THROW(solve_admm(p, vec({1})), DimensionError);
  EXPECT_THROW(solve_admm(p, vec({1, -1})), DomainError);
  AdmmConfig bad;
  bad.rho = 0.0;
  EXPECT_THROW(solve_admm(p, vec({1, 1}), bad), ConfigError);
  EXPECT_THROW(Problem(Matrix::Identity(2, 2), vec({1, 1, 1}), 1.0), DimensionError);
  EXPECT_THROW(Problem(Matrix::Identity(2, 2), vec({1, 1}), 0.0), ConfigError);
}

TEST(KktResidual, Examples) {
  const Problem p1(Matrix::Identity(1, 1), vec({0.5}), 1.0);
  EXPECT_EQ(kkt_residual(p1, vec({1}), vec({0})), 0.0);
  const Problem p2(Matrix::Identity(2, 2), vec({3, 0.5}), 1.0);
  EXPECT_NEAR(kkt_residual(p2, vec({1, 1}), vec({2, 0})), 0.0, 1e-15);
  EXPECT_NEAR(kkt_residual(p2, vec({1, 1}), vec({2.1, 0})), 0.1, 1e-12);
}

TEST(WeightedLassoObjective, Value) {
  const Problem p(Matrix::Identity(2, 2), vec({3, 0.5}), 2.0);
  // 1/2 (1 + 0.25) + 2 (0.5 * 2 + 1 * 0)
  EXPECT_DOUBLE_EQ(weighted_lasso_objective(p, vec({0.5, 1}), vec({2, 0})), 0.625 + 2.0);
}

}  // namespace
}  // namespace lassorw
