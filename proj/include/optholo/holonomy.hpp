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

// Area-formula holonomic gates and the named gates built from them.
//
// Two-qubit matrices use the code-basis order {|00>, |10>, |11>, |01>}
// (first qubit is the control) unless a function says otherwise.

#include <cmath>
#include <stdexcept>
#include <string>

#include "optholo/linalg.hpp"
#include "optholo/loops.hpp"

namespace optholo {

enum class GeneratorLabel { Sigma1, Sigma2, Sigma12 };

inline const char* generator_name(GeneratorLabel g) {
  switch (g) {
    case GeneratorLabel::Sigma1: return "Sigma1";
    case GeneratorLabel::Sigma2: return "Sigma2";
    case GeneratorLabel::Sigma12: return "Sigma12";
  }
  return "?";
}

struct Generator {
  GeneratorLabel label;
  CMatrix matrix;

  static Generator sigma1() {
    CMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return {GeneratorLabel::Sigma1, m};
  }

  static Generator sigma2() {
    CMatrix m(2, 2);
    m << 0, -kI, kI, 0;
    return {GeneratorLabel::Sigma2, m};
  }

  /// Pauli-y on span{|10>, |11>}, the middle block of the code order.
  static Generator sigma12() {
    CMatrix m = CMatrix::Zero(4, 4);
    m(1, 2) = -kI;
    m(2, 1) = kI;
    return {GeneratorLabel::Sigma12, m};
  }

  static Generator from_label(GeneratorLabel label) {
    switch (label) {
      case GeneratorLabel::Sigma1: return sigma1();
      case GeneratorLabel::Sigma2: return sigma2();
      case GeneratorLabel::Sigma12: return sigma12();
    }
    throw std::invalid_argument("unknown generator");
  }

  Eigen::Index dim() const { return matrix.rows(); }
};

inline Generator generator_for(Plane plane) {
  switch (plane) {
    case Plane::I: return Generator::sigma1();
    case Plane::II: return Generator::sigma2();
    case Plane::III: return Generator::sigma12();
  }
  throw std::invalid_argument("unknown plane");
}

enum class Provenance { area_formula, connection_oracle, kicked_oracle, composed };

inline const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::area_formula: return "area_formula";
    case Provenance::connection_oracle: return "connection_oracle";
    case Provenance::kicked_oracle: return "kicked_oracle";
    case Provenance::composed: return "composed";
  }
  return "?";
}

struct GateMatrix {
  CMatrix matrix;
  Provenance provenance = Provenance::area_formula;
  /// ||U^dag U - I||_F of the matrix as computed (before any re-unitarization
  /// for oracle provenances).
  double unitarity_defect = 0.0;

  Eigen::Index dim() const { return matrix.rows(); }
};

inline GateMatrix composed(const CMatrix& m) {
  return {m, Provenance::composed, unitarity_defect(m)};
}

/// exp(-i G sigma).  Every generator here squares to a projector P, so
/// exp(-i G s) = (I - P) + cos(s) P - i sin(s) G exactly.
inline GateMatrix gate_from_area(const Generator& g, double sigma) {
  if (!std::isfinite(sigma)) throw std::invalid_argument("gate_from_area: non-finite sigma");
  const Eigen::Index d = g.dim();
  const CMatrix id = CMatrix::Identity(d, d);
  const CMatrix proj = g.matrix * g.matrix;
  CMatrix u = (id - proj) + std::cos(sigma) * proj - kI * std::sin(sigma) * g.matrix;
  const double defect = unitarity_defect(u);
  return {std::move(u), Provenance::area_formula, defect};
}

/// d/dsigma exp(-i G sigma) = -i G exp(-i G sigma).
inline CMatrix gate_derivative(const Generator& g, double sigma) {
  return -kI * g.matrix * gate_from_area(g, sigma).matrix;
}

/// [[cos S, sin S], [sin S, -cos S]]; the Hadamard gate at S = pi/4.
inline GateMatrix hadamard_family(double sigma) {
  if (!std::isfinite(sigma)) throw std::invalid_argument("hadamard_family: non-finite sigma");
  CMatrix m(2, 2);
  const double c = std::cos(sigma), s = std::sin(sigma);
  m << c, s, s, -c;
  return {m, Provenance::area_formula, unitarity_defect(m)};
}

/// diag(1, -1): hadamard_family(S) = gate_from_area(Sigma2, S) * this factor.
/// Which physical loop supplies it is left open.
inline CMatrix hadamard_corrective_factor() {
  CMatrix m = CMatrix::Identity(2, 2);
  m(1, 1) = -1.0;
  return m;
}

/// diag(1, e^{i phi}, 1, 1) in the code order.
inline GateMatrix phase_gate(double phi) {
  CMatrix m = CMatrix::Identity(4, 4);
  m(1, 1) = std::exp(kI * phi);
  return {m, Provenance::composed, unitarity_defect(m)};
}

/// P_pi * U^2 with U = exp(-i Sigma12 pi/4): swaps |10> and |11>.
inline GateMatrix controlled_not() {
  const CMatrix u = gate_from_area(Generator::sigma12(), kPi / 4).matrix;
  return composed(phase_gate(kPi).matrix * u * u);
}

/// Permutation Q with Q * m * Q^T re-expressing a code-order matrix in the
/// lexicographic order {|00>, |01>, |10>, |11>}.
inline CMatrix code_to_lexicographic() {
  // code index: 0 -> 00, 1 -> 10, 2 -> 11, 3 -> 01
  // lex index:  00 -> 0, 01 -> 1, 10 -> 2, 11 -> 3
  static constexpr int kLexOfCode[4] = {0, 2, 3, 1};
  CMatrix q = CMatrix::Zero(4, 4);
  for (int c = 0; c < 4; ++c) q(kLexOfCode[c], c) = 1.0;
  return q;
}

inline CMatrix to_lexicographic(const CMatrix& code_order) {
  const CMatrix q = code_to_lexicographic();
  return q * code_order * q.transpose();
}

struct LoopGate {
  GateMatrix gate;
  AreaResult area;
  Generator generator;
};

/// Sigma = area(loop), then exp(-i G_plane Sigma).
inline LoopGate gate_for_loop(const LoopSpec& loop, double tolerance = 1e-10) {
  const AreaResult a = area(loop, tolerance);
  const Generator g = generator_for(loop.plane());
  return {gate_from_area(g, a.sigma), a, g};
}

}  // namespace optholo
