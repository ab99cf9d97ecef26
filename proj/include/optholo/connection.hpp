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

// Wilczek-Zee connection of the dressed degenerate code space, its curvature,
// and the path-ordered loop holonomy, computed numerically in a truncated Fock
// space.  This is an independent check of the area formulas: nothing here
// reads the weights in loops.hpp.

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "optholo/diagnostics.hpp"
#include "optholo/fock.hpp"
#include "optholo/holonomy.hpp"
#include "optholo/linalg.hpp"
#include "optholo/loops.hpp"

namespace optholo {

/// Order of the two control unitaries forming the dressing W.
///   squeeze_first: W = D(lambda) S(mu)  (planes I, II)
///                  W = N(xi) M(zeta)    (plane III)
///   squeeze_last : the reverse products.
enum class ControlOrder { squeeze_first, squeeze_last };

/// How code-basis vectors are realised: code vector k is
/// phases[k] * W |labels[k]>, with labels given as Fock occupations (n1, n2).
struct FrameConvention {
  ControlOrder order = ControlOrder::squeeze_first;
  std::vector<std::array<int, 2>> labels;
  std::vector<Complex> phases;

  bool operator==(const FrameConvention&) const = default;
};

/// Frozen outcome of calibrate_single_mode(): D S ordering with code basis
/// {|0>, -i|1>}.
inline FrameConvention single_mode_convention() {
  return {ControlOrder::squeeze_first, {{0, 0}, {1, 0}}, {1.0, -kI}};
}

/// Frozen outcome of calibrate_two_mode(): N M ordering with the parity
/// labelling, logical (a, b) = (n1 xor n2, n2).  In code order
/// {00, 10, 11, 01} that is Fock {|00>, |10>, |01>, |11>}.
inline FrameConvention two_mode_convention() {
  return {ControlOrder::squeeze_first,
          {{0, 0}, {1, 0}, {0, 1}, {1, 1}},
          {1.0, 1.0, 1.0, 1.0}};
}

inline FrameConvention default_convention(Plane plane) {
  return plane == Plane::III ? two_mode_convention() : single_mode_convention();
}

/// Global sign s with oracle(C) ~ exp(-i G s Sigma(C)) for the frozen
/// conventions.
inline constexpr int kCalibratedSign = +1;

/// Default Fock cutoffs: per mode.
inline constexpr int kSingleModeCutoff = 60;
inline constexpr int kTwoModeCutoff = 14;

inline int default_cutoff(Plane plane) {
  return plane == Plane::III ? kTwoModeCutoff : kSingleModeCutoff;
}

/// Dressing unitaries of one plane, with both one-parameter control families
/// diagonalised once.
class FrameEngine {
 public:
  FrameEngine(Plane plane, int cutoff, FrameConvention convention)
      : plane_(plane), cutoff_(cutoff), convention_(std::move(convention)) {
    detail::require_cutoff(cutoff);
    if (convention_.labels.size() != convention_.phases.size() ||
        convention_.labels.size() != static_cast<std::size_t>(code_dim())) {
      throw std::invalid_argument("frame convention does not match the plane");
    }
    if (plane == Plane::III) {
      squeeze_ = SkewHermitianFlow(two_mode_squeeze_generator(1.0, cutoff).matrix);
      displace_ = SkewHermitianFlow(two_mode_mix_generator(1.0, cutoff).matrix);
    } else {
      const Complex mu_dir = plane == Plane::I ? Complex{1.0} : kI;
      squeeze_ = SkewHermitianFlow(squeeze_generator(mu_dir, cutoff).matrix);
      displace_ = SkewHermitianFlow(displacement_generator(1.0, cutoff).matrix);
    }
    code_states_ = CMatrix::Zero(dimension(), code_dim());
    for (int k = 0; k < code_dim(); ++k) {
      const auto [n1, n2] = convention_.labels[k];
      if (n1 < 0 || n2 < 0 || n1 >= cutoff || n2 >= cutoff ||
          (mode_count() == 1 && n2 != 0)) {
        throw std::invalid_argument("frame convention label out of range");
      }
      const Eigen::Index idx = mode_count() == 1 ? n1 : Eigen::Index{n1} * cutoff + n2;
      code_states_(idx, k) = convention_.phases[k];
    }
  }

  explicit FrameEngine(Plane plane)
      : FrameEngine(plane, default_cutoff(plane), default_convention(plane)) {}

  Plane plane() const { return plane_; }
  int cutoff() const { return cutoff_; }
  int mode_count() const { return plane_ == Plane::III ? 2 : 1; }
  int code_dim() const { return plane_ == Plane::III ? 4 : 2; }
  Eigen::Index dimension() const {
    return mode_count() == 1 ? cutoff_ : Eigen::Index{cutoff_} * cutoff_;
  }
  const FrameConvention& convention() const { return convention_; }

  /// Undressed code states (columns), including the convention phases.
  const CMatrix& code_states() const { return code_states_; }

  /// W(p) * states.  Plane coordinates are not range-checked so that finite
  /// differences may straddle the r = 0 boundary.
  CMatrix dress(Point2 p, const CMatrix& states) const {
    const auto [t_disp, t_sq] = times(p);
    if (convention_.order == ControlOrder::squeeze_first) {
      return displace_.apply(t_disp, squeeze_.apply(t_sq, states));
    }
    return squeeze_.apply(t_sq, displace_.apply(t_disp, states));
  }

  /// W(p)^dag * states.
  CMatrix undress(Point2 p, const CMatrix& states) const {
    const auto [t_disp, t_sq] = times(p);
    if (convention_.order == ControlOrder::squeeze_first) {
      return squeeze_.apply(-t_sq, displace_.apply(-t_disp, states));
    }
    return displace_.apply(-t_disp, squeeze_.apply(-t_sq, states));
  }

  CMatrix frame(Point2 p) const { return dress(p, code_states_); }

 private:
  /// (displacement-type parameter, squeeze-type parameter) at p.
  std::pair<double, double> times(Point2 p) const {
    if (plane_ == Plane::III) return {p.v, p.u};  // xi = r3, zeta = r2
    return {p.u, p.v};                            // lambda = x, mu ~ r1
  }

  Plane plane_;
  int cutoff_;
  FrameConvention convention_;
  SkewHermitianFlow squeeze_;
  SkewHermitianFlow displace_;
  CMatrix code_states_;
};

struct DressedFrame {
  ControlPoint point;
  Plane plane = Plane::I;
  int cutoff = 0;
  CMatrix basis;  ///< columns are the dressed code vectors, code order
  TruncationReport truncation;
};

inline DressedFrame dressed_frame(const FrameEngine& engine, const ControlPoint& point) {
  point.validate();
  if (!lies_on(engine.plane(), point)) {
    throw std::invalid_argument(std::string("dressed_frame: point is not on plane ") +
                                plane_name(engine.plane()));
  }
  DressedFrame f;
  f.point = point;
  f.plane = engine.plane();
  f.cutoff = engine.cutoff();
  f.basis = engine.frame(plane_coordinates(engine.plane(), point));
  f.truncation = assess_truncation(f.basis, engine.cutoff(), engine.mode_count());
  return f;
}

inline DressedFrame dressed_frame(const ControlPoint& point, Plane plane, int cutoff) {
  return dressed_frame(FrameEngine(plane, cutoff, default_convention(plane)), point);
}

struct ConnectionSample {
  Point2 point;
  CMatrix a_u;  ///< anti-Hermitian, code dim x code dim
  CMatrix a_v;
  double fd_step = 0.0;
  double raw_defect = 0.0;  ///< ||A + A^dag||_F before projection, worst component
};

inline constexpr double kDefaultFdStep = 1e-4;
inline constexpr double kDefaultCurvatureStep = 1e-3;

/// A_mu[a, b] = <phi_a(p)| d_mu phi_b(p)> by central differences.
inline ConnectionSample connection_at(const FrameEngine& engine, Point2 p,
                                      double fd_step = kDefaultFdStep) {
  if (!(fd_step >= 1e-6 && fd_step <= 1e-2)) {
    throw std::invalid_argument("connection_at: fd_step must lie in [1e-6, 1e-2]");
  }
  const CMatrix center = engine.frame(p).adjoint();
  auto component = [&](Point2 dir) {
    const CMatrix plus = engine.frame(p + fd_step * dir);
    const CMatrix minus = engine.frame(p - fd_step * dir);
    return CMatrix(center * (plus - minus) / (2.0 * fd_step));
  };
  CMatrix au = component({1.0, 0.0});
  CMatrix av = component({0.0, 1.0});
  const double defect = std::max(skew_hermitian_defect(au), skew_hermitian_defect(av));
  if (defect > 1e-4) {
    throw StepTooSmall("connection_at: anti-Hermitian defect " + std::to_string(defect) +
                       " indicates cancellation; increase fd_step");
  }
  ConnectionSample s;
  s.point = p;
  s.a_u = 0.5 * (au - au.adjoint());
  s.a_v = 0.5 * (av - av.adjoint());
  s.fd_step = fd_step;
  s.raw_defect = defect;
  return s;
}

struct CurvatureSample {
  Point2 point;
  CMatrix f;  ///< F_uv = d_u A_v - d_v A_u + [A_u, A_v]
  /// c with F = i c G, so the loop holonomy is exp(-i G integral(c)).
  double coefficient = 0.0;
};

inline CurvatureSample curvature_at(const FrameEngine& engine, Point2 p,
                                    double fd_step = kDefaultFdStep,
                                    double curvature_step = kDefaultCurvatureStep) {
  if (!(curvature_step > 0)) throw std::invalid_argument("curvature_at: step must be > 0");
  const double h = curvature_step;
  const ConnectionSample c0 = connection_at(engine, p, fd_step);
  const CMatrix dav_du = (connection_at(engine, p + Point2{h, 0}, fd_step).a_v -
                          connection_at(engine, p - Point2{h, 0}, fd_step).a_v) /
                         (2 * h);
  const CMatrix dau_dv = (connection_at(engine, p + Point2{0, h}, fd_step).a_u -
                          connection_at(engine, p - Point2{0, h}, fd_step).a_u) /
                         (2 * h);
  CurvatureSample out;
  out.point = p;
  out.f = dav_du - dau_dv + c0.a_u * c0.a_v - c0.a_v * c0.a_u;
  const CMatrix g = generator_for(engine.plane()).matrix;
  const Complex num = (g * out.f).trace();
  const Complex den = (g * g).trace();
  out.coefficient = (-kI * num / den).real();
  return out;
}

/// Point-dependent rephasing of the code vectors, for gauge-covariance checks.
using GaugeFunction = std::function<Complex(int code_index, Point2 p)>;

struct OracleHolonomy {
  GateMatrix gate;
  int steps = 0;
  /// ||U(steps) - U(steps / 2)||_F.
  double convergence_estimate = 0.0;
  TruncationReport truncation;
};

namespace detail {

inline CMatrix ordered_overlap_product(const FrameEngine& engine,
                                       const std::vector<Point2>& pts,
                                       const GaugeFunction& gauge,
                                       TruncationReport* truncation,
                                       double* raw_defect) {
  auto frame_at = [&](Point2 p) {
    CMatrix f = engine.frame(p);
    if (gauge) {
      for (Eigen::Index a = 0; a < f.cols(); ++a) f.col(a) *= gauge(static_cast<int>(a), p);
    }
    if (truncation) {
      truncation->merge(assess_truncation(f, engine.cutoff(), engine.mode_count()));
    }
    return f;
  };
  const Eigen::Index d = engine.code_dim();
  CMatrix u = CMatrix::Identity(d, d);
  CMatrix raw = CMatrix::Identity(d, d);
  CMatrix prev = frame_at(pts.front());
  for (std::size_t k = 1; k < pts.size(); ++k) {
    CMatrix next = frame_at(pts[k]);
    const CMatrix overlap = next.adjoint() * prev;
    u = polar_unitary(overlap) * u;
    raw = overlap * raw;
    prev = std::move(next);
  }
  if (raw_defect) *raw_defect = unitarity_defect(raw);
  return u;
}

}  // namespace detail

/// Ordered product of re-unitarised frame overlaps <phi(p_{k+1}) | phi(p_k)>
/// around the loop.  Pass a finite `tolerance` to turn a large steps vs
/// steps/2 discrepancy into ConvergenceFailure.
inline OracleHolonomy holonomy_path_ordered(
    const FrameEngine& engine, const LoopSpec& loop, int steps,
    double tolerance = std::numeric_limits<double>::infinity(),
    const GaugeFunction& gauge = {}) {
  if (loop.plane() != engine.plane()) {
    throw std::invalid_argument("holonomy_path_ordered: loop and engine planes differ");
  }
  if (steps < 100) throw std::invalid_argument("holonomy_path_ordered: steps must be >= 100");
  OracleHolonomy out;
  out.steps = steps;
  double raw_defect = 0.0;
  const CMatrix u = detail::ordered_overlap_product(engine, discretize(loop, steps), gauge,
                                                    &out.truncation, &raw_defect);
  const CMatrix half = detail::ordered_overlap_product(engine, discretize(loop, steps / 2),
                                                       gauge, nullptr, nullptr);
  out.gate = {u, Provenance::connection_oracle, raw_defect};
  out.convergence_estimate = (u - half).norm();
  if (out.convergence_estimate > tolerance) {
    throw ConvergenceFailure("holonomy_path_ordered: steps/2 comparison exceeds tolerance",
                             out.convergence_estimate);
  }
  return out;
}

inline OracleHolonomy holonomy_path_ordered(const LoopSpec& loop, int cutoff, int steps) {
  const FrameEngine engine(loop.plane(), cutoff, default_convention(loop.plane()));
  return holonomy_path_ordered(engine, loop, steps);
}

/// Loop used to fix conventions once per plane.
inline LoopSpec calibration_loop(Plane plane) {
  if (plane == Plane::III) return LoopSpec::rect(plane, {0.2, 0.4, 0.0, 0.2});
  return LoopSpec::rect(plane, {0.0, 0.1, 0.0, 0.1});
}

struct CalibrationCandidate {
  FrameConvention convention;
  int sign = 1;
  double distance = 0.0;
};

struct Calibration {
  CalibrationCandidate best;
  std::vector<CalibrationCandidate> table;
};

namespace detail {

inline double calibration_distance(Plane plane, int cutoff, int steps,
                                   const FrameConvention& conv, int sign) {
  const LoopSpec loop = calibration_loop(plane);
  const FrameEngine engine(plane, cutoff, conv);
  const CMatrix oracle = holonomy_path_ordered(engine, loop, steps).gate.matrix;
  const CMatrix formula =
      gate_from_area(generator_for(plane), sign * area(loop).sigma).matrix;
  return (oracle - formula).norm();
}

}  // namespace detail

/// Tries both control orderings, four phases on the |1> code vector and both
/// global signs against the Plane I calibration loop.  Ties keep the first
/// candidate in enumeration order (sign +1 first).
inline Calibration calibrate_single_mode(int cutoff = kSingleModeCutoff, int steps = 400) {
  Calibration cal;
  for (int sign : {1, -1}) {
    for (ControlOrder order : {ControlOrder::squeeze_first, ControlOrder::squeeze_last}) {
      for (Complex phase : {Complex{1.0}, kI, Complex{-1.0}, -kI}) {
        FrameConvention conv{order, {{0, 0}, {1, 0}}, {1.0, phase}};
        const double d = detail::calibration_distance(Plane::I, cutoff, steps, conv, sign);
        cal.table.push_back({conv, sign, d});
      }
    }
  }
  cal.best = *std::min_element(cal.table.begin(), cal.table.end(),
                               [](const auto& a, const auto& b) { return a.distance < b.distance; });
  return cal;
}

/// Tries both orderings, direct vs parity labelling and the sign of the third
/// code vector against the Plane III calibration loop, at a fixed global sign.
inline Calibration calibrate_two_mode(int cutoff = kTwoModeCutoff, int steps = 400,
                                      int sign = kCalibratedSign) {
  const std::vector<std::array<int, 2>> direct = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const std::vector<std::array<int, 2>> parity = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  Calibration cal;
  for (ControlOrder order : {ControlOrder::squeeze_first, ControlOrder::squeeze_last}) {
    for (const auto* labels : {&direct, &parity}) {
      for (double s3 : {1.0, -1.0}) {
        FrameConvention conv{order, *labels, {1.0, 1.0, s3, 1.0}};
        const double d = detail::calibration_distance(Plane::III, cutoff, steps, conv, sign);
        cal.table.push_back({conv, sign, d});
      }
    }
  }
  cal.best = *std::min_element(cal.table.begin(), cal.table.end(),
                               [](const auto& a, const auto& b) { return a.distance < b.distance; });
  return cal;
}

}  // namespace optholo
