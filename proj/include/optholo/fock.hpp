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

// Truncated Fock-space operators for one and two bosonic modes.
//
// Two-mode states are stored with mode 1 as the major index:
// |n1 n2> lives at n1 * cutoff + n2.

#include <cmath>
#include <stdexcept>
#include <string>

#include "optholo/diagnostics.hpp"
#include "optholo/linalg.hpp"

namespace optholo {

struct TruncatedOperator {
  int cutoff = 0;
  int mode_count = 1;
  CMatrix matrix;

  TruncatedOperator() = default;
  TruncatedOperator(int cutoff_, int modes, CMatrix m)
      : cutoff(cutoff_), mode_count(modes), matrix(std::move(m)) {
    if (modes != 1 && modes != 2) {
      throw std::invalid_argument("mode_count must be 1 or 2");
    }
    if (matrix.rows() != dimension() || matrix.cols() != dimension()) {
      throw std::invalid_argument("operator shape does not match cutoff^modes");
    }
  }

  Eigen::Index dimension() const {
    return mode_count == 1 ? cutoff : static_cast<Eigen::Index>(cutoff) * cutoff;
  }
};

/// A point of the eight-parameter control manifold.
/// lambda = x + i y, mu = r1 e^{i theta1}, zeta = r2 e^{i theta2},
/// xi = r3 e^{i theta3}.
struct ControlPoint {
  double x = 0, y = 0;
  double r1 = 0, theta1 = 0;
  double r2 = 0, theta2 = 0;
  double r3 = 0, theta3 = 0;

  Complex lambda() const { return {x, y}; }
  Complex mu() const { return std::polar(r1, theta1); }
  Complex zeta() const { return std::polar(r2, theta2); }
  Complex xi() const { return std::polar(r3, theta3); }

  void validate() const {
    if (r1 < 0 || r2 < 0 || r3 < 0) {
      throw std::invalid_argument("control amplitudes r1, r2, r3 must be >= 0");
    }
  }

  /// Angles reduced to [0, 2 pi).
  ControlPoint normalized() const {
    auto wrap = [](double a) {
      double w = std::fmod(a, 2 * kPi);
      return w < 0 ? w + 2 * kPi : w;
    };
    ControlPoint p = *this;
    p.theta1 = wrap(theta1);
    p.theta2 = wrap(theta2);
    p.theta3 = wrap(theta3);
    return p;
  }
};

namespace detail {

inline void require_cutoff(int cutoff) {
  if (cutoff < 2) {
    throw std::invalid_argument("cutoff must be >= 2, got " +
                                std::to_string(cutoff));
  }
}

inline void require_finite(Complex z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

}  // namespace detail

inline TruncatedOperator annihilator(int cutoff) {
  detail::require_cutoff(cutoff);
  CMatrix a = CMatrix::Zero(cutoff, cutoff);
  for (int n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return {cutoff, 1, std::move(a)};
}

inline TruncatedOperator number_operator(int cutoff) {
  detail::require_cutoff(cutoff);
  CMatrix n = CMatrix::Zero(cutoff, cutoff);
  for (int k = 0; k < cutoff; ++k) n(k, k) = static_cast<double>(k);
  return {cutoff, 1, std::move(n)};
}

/// Mode-1 and mode-2 annihilators on the two-mode space.
inline std::pair<CMatrix, CMatrix> two_mode_annihilators(int cutoff) {
  const CMatrix a = annihilator(cutoff).matrix;
  const CMatrix id = CMatrix::Identity(cutoff, cutoff);
  return {kron(a, id), kron(id, a)};
}

// Generators (all skew-Hermitian).

inline TruncatedOperator displacement_generator(Complex lambda, int cutoff) {
  const CMatrix a = annihilator(cutoff).matrix;
  return {cutoff, 1, lambda * a.adjoint() - std::conj(lambda) * a};
}

inline TruncatedOperator squeeze_generator(Complex mu, int cutoff) {
  const CMatrix a = annihilator(cutoff).matrix;
  const CMatrix a2 = a * a;
  return {cutoff, 1, mu * a2.adjoint() - std::conj(mu) * a2};
}

inline TruncatedOperator two_mode_mix_generator(Complex xi, int cutoff) {
  detail::require_cutoff(cutoff);
  const auto [a1, a2] = two_mode_annihilators(cutoff);
  return {cutoff, 2, xi * a1.adjoint() * a2 - std::conj(xi) * a1 * a2.adjoint()};
}

inline TruncatedOperator two_mode_squeeze_generator(Complex zeta, int cutoff) {
  detail::require_cutoff(cutoff);
  const auto [a1, a2] = two_mode_annihilators(cutoff);
  return {cutoff, 2,
          zeta * a1.adjoint() * a2.adjoint() - std::conj(zeta) * a1 * a2};
}

inline TruncatedOperator matrix_exponential(const TruncatedOperator& generator) {
  return {generator.cutoff, generator.mode_count,
          matrix_exponential(generator.matrix)};
}

/// D(lambda) = exp(lambda a^dag - conj(lambda) a).
inline TruncatedOperator displacement(Complex lambda, int cutoff) {
  detail::require_finite(lambda, "lambda");
  return matrix_exponential(displacement_generator(lambda, cutoff));
}

/// S(mu) = exp(mu a^dag^2 - conj(mu) a^2).  No factor 1/2 in the exponent.
inline TruncatedOperator squeeze(Complex mu, int cutoff) {
  detail::require_finite(mu, "mu");
  return matrix_exponential(squeeze_generator(mu, cutoff));
}

/// N(xi) = exp(xi a1^dag a2 - conj(xi) a1 a2^dag).
inline TruncatedOperator two_mode_mix(Complex xi, int cutoff) {
  detail::require_finite(xi, "xi");
  return matrix_exponential(two_mode_mix_generator(xi, cutoff));
}

/// M(zeta) = exp(zeta a1^dag a2^dag - conj(zeta) a1 a2).
inline TruncatedOperator two_mode_squeeze(Complex zeta, int cutoff) {
  detail::require_finite(zeta, "zeta");
  return matrix_exponential(two_mode_squeeze_generator(zeta, cutoff));
}

/// chi * sum_i n_i (n_i - 1).  Zero on Fock levels 0 and 1 of every mode.
inline TruncatedOperator kerr_hamiltonian(double chi, int cutoff, int mode_count) {
  detail::require_cutoff(cutoff);
  if (!(chi > 0)) throw std::invalid_argument("kerr_hamiltonian: chi must be > 0");
  if (mode_count != 1 && mode_count != 2) {
    throw std::invalid_argument("kerr_hamiltonian: mode_count must be 1 or 2");
  }
  auto level = [chi](int n) { return chi * n * (n - 1.0); };
  if (mode_count == 1) {
    CMatrix h = CMatrix::Zero(cutoff, cutoff);
    for (int n = 0; n < cutoff; ++n) h(n, n) = level(n);
    return {cutoff, 1, std::move(h)};
  }
  const Eigen::Index dim = static_cast<Eigen::Index>(cutoff) * cutoff;
  CMatrix h = CMatrix::Zero(dim, dim);
  for (int n1 = 0; n1 < cutoff; ++n1) {
    for (int n2 = 0; n2 < cutoff; ++n2) {
      const Eigen::Index k = static_cast<Eigen::Index>(n1) * cutoff + n2;
      h(k, k) = level(n1) + level(n2);
    }
  }
  return {cutoff, 2, std::move(h)};
}

/// Population in Fock levels n >= ceil(3N/4) (any mode) of each column of
/// `states`, worst case.
inline TruncationReport assess_truncation(const CMatrix& states, int cutoff,
                                          int mode_count) {
  const int first_top = (3 * cutoff + 3) / 4;
  double worst = 0.0;
  for (Eigen::Index c = 0; c < states.cols(); ++c) {
    double top = 0.0;
    for (Eigen::Index k = 0; k < states.rows(); ++k) {
      const int n1 = mode_count == 1 ? static_cast<int>(k)
                                     : static_cast<int>(k / cutoff);
      const int n2 = mode_count == 1 ? 0 : static_cast<int>(k % cutoff);
      if (n1 >= first_top || n2 >= first_top) top += std::norm(states(k, c));
    }
    worst = std::max(worst, top);
  }
  return {worst, worst < kTruncationBound};
}

/// Truncation check of an operator on its lowest `probe_levels` basis columns
/// (per mode).
inline TruncationReport assess_truncation(const TruncatedOperator& op,
                                          int probe_levels) {
  const int probe = std::min(probe_levels, op.cutoff);
  if (op.mode_count == 1) {
    return assess_truncation(op.matrix.leftCols(probe), op.cutoff, 1);
  }
  CMatrix cols(op.dimension(), static_cast<Eigen::Index>(probe) * probe);
  Eigen::Index c = 0;
  for (int n1 = 0; n1 < probe; ++n1) {
    for (int n2 = 0; n2 < probe; ++n2) {
      cols.col(c++) = op.matrix.col(static_cast<Eigen::Index>(n1) * op.cutoff + n2);
    }
  }
  return assess_truncation(cols, op.cutoff, 2);
}

}  // namespace optholo
