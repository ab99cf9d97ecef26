// Copyright 2026 The optholo Authors
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

#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace optholo {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

inline bool all_finite(const CMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) {
        return false;
      }
    }
  }
  return true;
}

inline double skew_hermitian_defect(const CMatrix& m) {
  return (m + m.adjoint()).norm();
}

inline double unitarity_defect(const CMatrix& u) {
  return (u.adjoint() * u - CMatrix::Identity(u.cols(), u.cols())).norm();
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Unitary factor of the polar decomposition m = U P.
inline CMatrix polar_unitary(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

/// exp(t K) for a fixed skew-Hermitian K, diagonalised once.  Used for the
/// one-parameter control families along loop edges, where the same generator
/// is exponentiated thousands of times.
class SkewHermitianFlow {
 public:
  SkewHermitianFlow() = default;

  explicit SkewHermitianFlow(const CMatrix& generator) {
    if (generator.rows() != generator.cols()) {
      throw std::invalid_argument("flow generator must be square");
    }
    // K = -i H with H = i K Hermitian.
    const CMatrix hermitian = kI * generator;
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(0.5 *
                                               (hermitian + hermitian.adjoint()));
    vectors_ = eig.eigenvectors();
    values_ = eig.eigenvalues();
  }

  Eigen::Index dimension() const { return vectors_.rows(); }

  CMatrix unitary(double t) const {
    return vectors_ * phases(t).asDiagonal() * vectors_.adjoint();
  }

  /// exp(t K) * states without forming the full unitary.
  CMatrix apply(double t, const CMatrix& states) const {
    CMatrix coeffs = vectors_.adjoint() * states;
    coeffs = phases(t).asDiagonal() * coeffs;
    return vectors_ * coeffs;
  }

 private:
  CVector phases(double t) const {
    CVector out(values_.size());
    for (Eigen::Index i = 0; i < values_.size(); ++i) {
      out(i) = std::exp(-kI * values_(i) * t);
    }
    return out;
  }

  CMatrix vectors_;
  Eigen::VectorXd values_;
};

/// exp(G) for any square matrix with finite entries.  Skew-Hermitian input
/// takes the spectral route and comes back unitary to rounding.
inline CMatrix matrix_exponential(const CMatrix& generator) {
  if (generator.rows() != generator.cols()) {
    throw std::invalid_argument("matrix_exponential: generator must be square");
  }
  if (!all_finite(generator)) {
    throw std::invalid_argument("matrix_exponential: non-finite entries");
  }
  if (generator.size() == 0) return generator;
  const double scale = generator.norm();
  if (scale == 0.0) {
    return CMatrix::Identity(generator.rows(), generator.cols());
  }
  if (skew_hermitian_defect(generator) <= 1e-12 * scale) {
    return SkewHermitianFlow(generator).unitary(1.0);
  }
  return generator.exp();
}

}  // namespace optholo
