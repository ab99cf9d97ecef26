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


#include <cmath>
#include <random>

#include "optholo/holonomy.hpp"
#include "support.hpp"

namespace optholo {
namespace {

using testing::frob;
using testing::max_entry;

const double kR = 1.0 / std::sqrt(2.0);

CMatrix printed_hadamard() {
  CMatrix m(2, 2);
  m << kR, kR, kR, -kR;
  return m;
}

CMatrix printed_two_qubit() {
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = 1;
  m(3, 3) = 1;
  m(1, 1) = kR;
  m(1, 2) = -kR;
  m(2, 1) = kR;
  m(2, 2) = kR;
  return m;
}

// Independent route: Eigen's Pade exponential of -i G sigma.
CMatrix exp_route(const Generator& g, double sigma) {
  return CMatrix(-kI * sigma * g.matrix).exp();
}

TEST(Generators, HermitianInvolutionsOnSupport) {
  for (auto label : {GeneratorLabel::Sigma1, GeneratorLabel::Sigma2, GeneratorLabel::Sigma12}) {
    const Generator g = Generator::from_label(label);
    EXPECT_LT((g.matrix - g.matrix.adjoint()).norm(), 1e-14);
    const CMatrix p = g.matrix * g.matrix;
    EXPECT_LT(frob(p * p, p), 1e-15);
    EXPECT_EQ(g.label, label);
  }
  EXPECT_EQ(frob(Generator::sigma1().matrix, testing::pauli_x()), 0.0);
  EXPECT_EQ(frob(Generator::sigma2().matrix, testing::pauli_y()), 0.0);
  const CMatrix s12 = Generator::sigma12().matrix;
  EXPECT_EQ(frob(s12.block(1, 1, 2, 2), testing::pauli_y()), 0.0);
  EXPECT_EQ(s12.row(0).norm() + s12.row(3).norm(), 0.0);
}

TEST(Generators, PlaneAssignment) {
  EXPECT_EQ(generator_for(Plane::I).label, GeneratorLabel::Sigma1);
  EXPECT_EQ(generator_for(Plane::II).label, GeneratorLabel::Sigma2);
  EXPECT_EQ(generator_for(Plane::III).label, GeneratorLabel::Sigma12);
}

TEST(GateFromArea, ZeroIsIdentity) {
  for (auto label : {GeneratorLabel::Sigma1, GeneratorLabel::Sigma2, GeneratorLabel::Sigma12}) {
    const Generator g = Generator::from_label(label);
    EXPECT_EQ(gate_from_area(g, 0.0).matrix, CMatrix::Identity(g.dim(), g.dim()));
  }
}

TEST(GateFromArea, RotationValues) {
  CMatrix ry(2, 2);
  ry << kR, -kR, kR, kR;
  EXPECT_LT(max_entry(gate_from_area(Generator::sigma2(), kPi / 4).matrix, ry), 1e-15);
  EXPECT_LT(max_entry(gate_from_area(Generator::sigma12(), kPi / 4).matrix, printed_two_qubit()),
            1e-12);
}

TEST(GateFromArea, AgreesWithExponentialOnRandomAreas) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> s(-10.0, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    for (auto label : {GeneratorLabel::Sigma1, GeneratorLabel::Sigma2, GeneratorLabel::Sigma12}) {
      const Generator g = Generator::from_label(label);
      const double sigma = s(rng);
      const GateMatrix u = gate_from_area(g, sigma);
      EXPECT_LT(frob(u.matrix, exp_route(g, sigma)), 1e-12);
      EXPECT_LT(u.unitarity_defect, 1e-10);
      EXPECT_EQ(u.provenance, Provenance::area_formula);
    }
  }
}

TEST(GateFromArea, OneParameterGroup) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> s(-3.0, 3.0);
  for (int trial = 0; trial < 30; ++trial) {
    const double a = s(rng), b = s(rng);
    for (auto label : {GeneratorLabel::Sigma1, GeneratorLabel::Sigma2, GeneratorLabel::Sigma12}) {
      const Generator g = Generator::from_label(label);
      EXPECT_LT(frob(gate_from_area(g, a).matrix * gate_from_area(g, b).matrix,
                     gate_from_area(g, a + b).matrix),
                1e-13);
      EXPECT_LT(frob(gate_from_area(g, -a).matrix, gate_from_area(g, a).matrix.adjoint()), 1e-15);
    }
  }
}

TEST(GateDerivative, MatchesCentralDifference) {
  const double h = 1e-5;
  for (auto label : {GeneratorLabel::Sigma1, GeneratorLabel::Sigma2, GeneratorLabel::Sigma12}) {
    const Generator g = Generator::from_label(label);
    for (double s : {-1.0, 0.0, 0.4, kPi / 4, 2.5}) {
      const CMatrix fd =
          (gate_from_area(g, s + h).matrix - gate_from_area(g, s - h).matrix) / (2 * h);
      EXPECT_LT(frob(gate_derivative(g, s), fd), 1e-9);
    }
  }
}

TEST(GateFromArea, RejectsNonFinite) {
  EXPECT_THROW(gate_from_area(Generator::sigma1(), NAN), std::invalid_argument);
  EXPECT_THROW(hadamard_family(INFINITY), std::invalid_argument);
}

TEST(HadamardFamily, Values) {
  EXPECT_LT(max_entry(hadamard_family(kPi / 4).matrix, printed_hadamard()), 1e-12);
  CMatrix z(2, 2);
  z << 1, 0, 0, -1;
  EXPECT_EQ(hadamard_family(0.0).matrix, z);
  EXPECT_LT(max_entry(hadamard_family(kPi / 2).matrix, testing::pauli_x()), 1e-15);
}

TEST(HadamardFamily, RotationTimesCorrectiveFactor) {
  for (double s : {-0.7, 0.0, 0.3, kPi / 4, 1.9}) {
    const CMatrix viaRotation =
        gate_from_area(Generator::sigma2(), s).matrix * hadamard_corrective_factor();
    EXPECT_LT(frob(viaRotation, hadamard_family(s).matrix), 1e-15);
    EXPECT_LT(hadamard_family(s).unitarity_defect, 1e-14);
  }
}

TEST(PhaseGate, Values) {
  EXPECT_EQ(phase_gate(0.0).matrix, CMatrix::Identity(4, 4));
  CMatrix p = CMatrix::Identity(4, 4);
  p(1, 1) = -1;
  EXPECT_LT(max_entry(phase_gate(kPi).matrix, p), 1e-15);
  EXPECT_LT(frob(phase_gate(0.8).matrix * phase_gate(-0.8).matrix, CMatrix::Identity(4, 4)),
            1e-15);
}

TEST(ControlledNot, SwapsTenAndEleven) {
  const CMatrix cn = controlled_not().matrix;
  CMatrix swap = CMatrix::Zero(4, 4);
  swap(0, 0) = 1;
  swap(3, 3) = 1;
  swap(2, 1) = 1;
  swap(1, 2) = 1;
  EXPECT_LT(max_entry(cn, swap), 1e-12);
  EXPECT_LT(frob(cn * cn, CMatrix::Identity(4, 4)), 1e-12);
}

TEST(ControlledNot, ExplicitProductOfPrintedMatrices) {
  CMatrix p = CMatrix::Identity(4, 4);
  p(1, 1) = -1;
  const CMatrix u = printed_two_qubit();
  EXPECT_LT(frob(p * u * u, controlled_not().matrix), 1e-12);
}

TEST(ControlledNot, StandardMatrixInLexicographicOrder) {
  CMatrix standard = CMatrix::Zero(4, 4);
  standard(0, 0) = 1;
  standard(1, 1) = 1;
  standard(2, 3) = 1;
  standard(3, 2) = 1;
  EXPECT_LT(max_entry(to_lexicographic(controlled_not().matrix), standard), 1e-12);
  const CMatrix q = code_to_lexicographic();
  EXPECT_EQ(q * q.transpose(), CMatrix::Identity(4, 4));
}

TEST(GateForLoop, Cases) {
  const auto degenerate = LoopSpec::rect(Plane::II, {0.1, 0.4, 0.2, 0.2});
  EXPECT_EQ(gate_for_loop(degenerate).gate.matrix, CMatrix::Identity(2, 2));

  const auto t = LoopSpec::rect(Plane::III, {0, std::acosh(2.0), 0, kPi / 8});
  const LoopGate lg = gate_for_loop(t);
  EXPECT_EQ(lg.generator.label, GeneratorLabel::Sigma12);
  EXPECT_LT(frob(lg.gate.matrix, gate_from_area(Generator::sigma12(), 3 * kPi / 4).matrix), 1e-12);

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> c(0.0, 1.0);
  for (Plane p : {Plane::I, Plane::II, Plane::III}) {
    for (int trial = 0; trial < 10; ++trial) {
      const double a = c(rng), b = c(rng);
      const auto loop = LoopSpec::rect(p, {a, a + c(rng), b, b + c(rng)});
      EXPECT_LT(frob(gate_for_loop(loop.reversed()).gate.matrix,
                     gate_for_loop(loop).gate.matrix.adjoint()),
                1e-14);
    }
  }
}

TEST(GateFromArea, UnitModulusDeterminant) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> s(-5.0, 5.0);
  for (int trial = 0; trial < 30; ++trial) {
    for (auto label : {GeneratorLabel::Sigma1, GeneratorLabel::Sigma2, GeneratorLabel::Sigma12}) {
      const Complex det = gate_from_area(Generator::from_label(label), s(rng)).matrix.determinant();
      EXPECT_NEAR(std::abs(det), 1.0, 1e-12);
    }
  }
}

TEST(HadamardFamily, SquaresToIdentity) {
  const CMatrix h = hadamard_family(kPi / 4).matrix;
  EXPECT_LT(frob(h * h, CMatrix::Identity(2, 2)), 1e-12);
  EXPECT_NEAR(h.determinant().real(), -1.0, 1e-15);
}

}  // namespace
}  // namespace optholo
