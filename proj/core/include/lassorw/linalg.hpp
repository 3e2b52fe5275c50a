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

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <filesystem>
#include <stdexcept>
#include <vector>

namespace lassorw {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// A v, with shape checking.
Vector matvec(const Matrix& a, const Vector& v);
/// A^T v, with shape checking.
Vector matvec_t(const Matrix& a, const Vector& v);

/// Power iteration did not settle within max_iter sweeps.
class PowerIterationError : public std::runtime_error {
 public:
  PowerIterationError(const std::string& what, double last_estimate)
      : std::runtime_error(what), last_estimate_(last_estimate) {}
  double last_estimate() const { return last_estimate_; }

 private:
  double last_estimate_;
};

struct SpectralEstimate {
  double value = 0.0;
  int iterations = 0;
  std::vector<double> history;  // Rayleigh quotient after every sweep
};

/// ||A||_2^2 by power iteration on the smaller of A^T A and A A^T, started
/// from the normalized all-ones vector. Stops once two consecutive Rayleigh
/// quotients agree to relative tolerance `tol`.
SpectralEstimate spectral_norm_sq_trace(const Matrix& a, double tol = 1e-9,
                                        int max_iter = 5000);

inline double spectral_norm_sq(const Matrix& a, double tol = 1e-9,
                               int max_iter = 5000) {
  return spectral_norm_sq_trace(a, tol, max_iter).value;
}

/// Componentwise sign(z_i) max(|z_i| - theta_i, 0). Thresholds must be
/// nonnegative.
Vector soft_threshold(const Vector& z, const Vector& theta);

/// Cholesky factor of a symmetric positive definite matrix, reusable across
/// solves.
class SpdFactor {
 public:
  explicit SpdFactor(const Matrix& m);

  Vector solve(const Vector& b) const;
  Eigen::Index size() const { return llt_.rows(); }

 private:
  Eigen::LLT<Matrix> llt_;
};

inline SpdFactor spd_factor(const Matrix& m) { return SpdFactor(m); }
inline Vector spd_solve(const SpdFactor& f, const Vector& b) {
  return f.solve(b);
}

// Plain CSV: one matrix row per line, comma separated decimal reals.
Matrix read_matrix_csv(const std::filesystem::path& path);
/// Accepts a single column (one value per line) or a single row.
Vector read_vector_csv(const std::filesystem::path& path);
void write_matrix_csv(const std::filesystem::path& path, const Matrix& a);
void write_vector_csv(const std::filesystem::path& path, const Vector& v);

}  // namespace lassorw
