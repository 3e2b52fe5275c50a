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

#include "lassorw/linalg.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "lassorw/csv.hpp"
#include "lassorw/errors.hpp"

namespace lassorw {
namespace {

std::string shape(const Matrix& a) {
  return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

std::vector<std::vector<double>> read_rows(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    for (const auto& field : csv::split_record(line)) {
      double v = 0.0;
      try {
        v = csv::parse_real(field);
      } catch (const ConfigError& e) {
        throw IoError(path.string() + ":" + std::to_string(lineno) + ": " +
                      e.what());
      }
      if (!std::isfinite(v))
        throw IoError(path.string() + ":" + std::to_string(lineno) +
                      ": non-finite entry");
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  if (in.bad()) throw IoError("read error on " + path.string());
  if (rows.empty()) throw IoError(path.string() + ": no data");
  return rows;
}

}  // namespace

Vector matvec(const Matrix& a, const Vector& v) {
  if (a.cols() != v.size())
    throw DimensionError("matvec: matrix " + shape(a) + " times vector of " +
                         std::to_string(v.size()));
  return a * v;
}

Vector matvec_t(const Matrix& a, const Vector& v) {
  if (a.rows() != v.size())
    throw DimensionError("matvec_t: transpose of " + shape(a) +
                         " times vector of " + std::to_string(v.size()));
  return a.transpose() * v;
}

SpectralEstimate spectral_norm_sq_trace(const Matrix& a, double tol,
                                        int max_iter) {
  if (a.size() == 0 || a.cwiseAbs().maxCoeff() == 0.0)
    throw DomainError("spectral_norm_sq: matrix must be nonzero");
  if (!(tol > 0.0) || max_iter < 1)
    throw ConfigError("spectral_norm_sq: tol and max_iter must be positive");

  const Matrix gram = a.rows() < a.cols()
                          ? Matrix(a * a.transpose())
                          : Matrix(a.transpose() * a);
  Vector v = Vector::Ones(gram.rows()).normalized();

  SpectralEstimate est;
  double prev = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    Vector gv = gram * v;
    const double rayleigh = v.dot(gv);
    est.history.push_back(rayleigh);
    est.value = rayleigh;
    est.iterations = it;
    const double nrm = gv.norm();
    if (nrm == 0.0) {
      // Start vector orthogonal to the range; restart from a coordinate axis.
      v.setZero();
      v(it % v.size()) = 1.0;
      continue;
    }
    if (it > 1 && std::abs(rayleigh - prev) <= tol * std::abs(rayleigh))
      return est;
    prev = rayleigh;
    v = gv / nrm;
  }
  std::ostringstream msg;
  msg << "spectral_norm_sq: power iteration did not converge in " << max_iter
      << " iterations (last estimate " << est.value << ")";
  throw PowerIterationError(msg.str(), est.value);
}

Vector soft_threshold(const Vector& z, const Vector& theta) {
  if (z.size() != theta.size())
    throw DimensionError("soft_threshold: " + std::to_string(z.size()) +
                         " values vs " + std::to_string(theta.size()) +
                         " thresholds");
  Vector out(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (!(theta(i) >= 0.0))
      throw DomainError("soft_threshold: negative threshold at index " +
                        std::to_string(i));
    const double mag = std::abs(z(i)) - theta(i);
    out(i) = mag > 0.0 ? std::copysign(mag, z(i)) : 0.0;
  }
  return out;
}

SpdFactor::SpdFactor(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw DimensionError("spd_factor: matrix must be square and nonempty, got " +
                         shape(m));
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw FactorizationError("spd_factor: matrix is not symmetric");
  llt_.compute(m);
  if (llt_.info() != Eigen::Success)
    throw FactorizationError("spd_factor: matrix is not positive definite");
  // LLT only inspects the lower triangle and succeeds on some indefinite
  // inputs with tiny pivots; reject a non-positive diagonal explicitly.
  const auto diag = Matrix(llt_.matrixL()).diagonal();
  if (!(diag.minCoeff() > 0.0) || !diag.allFinite())
    throw FactorizationError("spd_factor: matrix is not positive definite");
}

Vector SpdFactor::solve(const Vector& b) const {
  if (b.size() != llt_.rows())
    throw DimensionError("spd_solve: factor of size " +
                         std::to_string(llt_.rows()) + " vs rhs of " +
                         std::to_string(b.size()));
  return llt_.solve(b);
}

Matrix read_matrix_csv(const std::filesystem::path& path) {
  const auto rows = read_rows(path);
  const std::size_t cols = rows.front().size();
  Matrix a(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols)
      throw IoError(path.string() + ": row " + std::to_string(i + 1) +
                    " has " + std::to_string(rows[i].size()) +
                    " entries, expected " + std::to_string(cols));
    for (std::size_t j = 0; j < cols; ++j)
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rows[i][j];
  }
  return a;
}

Vector read_vector_csv(const std::filesystem::path& path) {
  const auto rows = read_rows(path);
  if (rows.size() == 1) {
    return Eigen::Map<const Vector>(rows.front().data(),
                                    static_cast<Eigen::Index>(rows[0].size()));
  }
  Vector v(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != 1)
      throw IoError(path.string() +
                    ": expected one value per line or a single row");
    v(static_cast<Eigen::Index>(i)) = rows[i][0];
  }
  return v;
}

void write_matrix_csv(const std::filesystem::path& path, const Matrix& a) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (j) out << ',';
      out << csv::format_real(a(i, j));
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed on " + path.string());
}

void write_vector_csv(const std::filesystem::path& path, const Vector& v) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out << csv::format_real(v(i)) << '\n';
  if (!out) throw IoError("write failed on " + path.string());
}

}  // namespace lassorw
