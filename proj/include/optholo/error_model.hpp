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

// Systematic control errors: border-shifted rectangles, the first-order
// perturbed gates, and border sensitivities of the gate parameter.  Also a
// statistical (zero-mean) contour-noise model for comparison.

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "optholo/holonomy.hpp"
#include "optholo/linalg.hpp"
#include "optholo/loops.hpp"

namespace optholo {

/// Outward-positive shifts of a rectangle's four borders:
/// u_min -> u_min - du_low, u_max -> u_max + du_high, likewise for v.
struct BorderShift {
  double du_low = 0, du_high = 0, dv_low = 0, dv_high = 0;
};

/// dSigma / d(border position).
struct BorderSensitivity {
  double u_min = 0, u_max = 0, v_min = 0, v_max = 0;
};

/// Printed coefficients of the two-qubit gate-parameter error
/// (delta = 1.7 alpha' + beta'), kept next to what the rectangle really gives.
struct StatedTwoQubitCoefficients {
  static constexpr double r2_border = 1.7;
  static constexpr double r3_border = 1.0;
};

struct ErrorReport {
  double sigma_nominal = 0.0;
  double sigma_perturbed = 0.0;
  double epsilon = 0.0;
  BorderSensitivity sensitivity;
  GateMatrix first_order_gate;
  GateMatrix exact_gate;
  /// Shifts at or beyond half the side they act on.
  std::vector<std::string> flags;
};

inline Rect shifted(const Rect& r, const BorderShift& s) {
  return {r.u_min - s.du_low, r.u_max + s.du_high, r.v_min - s.dv_low, r.v_max + s.dv_high};
}

/// Central differences of Sigma in each border position.  Evaluates the
/// rectangle closed form, which extends smoothly past r = 0.
inline BorderSensitivity sensitivity(const LoopSpec& rect, double fd_step = 1e-4) {
  if (!(fd_step > 0)) throw std::invalid_argument("sensitivity: fd_step must be > 0");
  const Rect r = rect.as_rect();
  const int o = rect.orientation();
  const double h = fd_step;
  auto sigma = [&](Rect x) { return o * detail::rect_closed_form(rect.plane(), x); };
  auto diff = [&](double Rect::*border) {
    Rect plus = r, minus = r;
    plus.*border += h;
    minus.*border -= h;
    return (sigma(plus) - sigma(minus)) / (2 * h);
  };
  return {diff(&Rect::u_min), diff(&Rect::u_max), diff(&Rect::v_min), diff(&Rect::v_max)};
}

inline ErrorReport perturbed_area(const LoopSpec& rect, const BorderShift& shift,
                                  double tolerance = 1e-10) {
  const Rect r = rect.as_rect();
  const Rect s = shifted(r, shift);
  if (!(s.u_min < s.u_max && s.v_min < s.v_max)) {
    throw std::invalid_argument("perturbed_area: shifted rectangle is degenerate");
  }
  const LoopSpec moved = LoopSpec::rect(rect.plane(), s, rect.orientation());

  ErrorReport rep;
  rep.sigma_nominal = area(rect, tolerance).sigma;
  rep.sigma_perturbed = area(moved, tolerance).sigma;
  rep.epsilon = rep.sigma_perturbed - rep.sigma_nominal;
  rep.sensitivity = sensitivity(rect);

  const Generator g = generator_for(rect.plane());
  rep.first_order_gate =
      composed(gate_from_area(g, rep.sigma_nominal).matrix +
               rep.epsilon * gate_derivative(g, rep.sigma_nominal));
  rep.exact_gate = gate_from_area(g, rep.sigma_perturbed);

  const double width = r.u_max - r.u_min, height = r.v_max - r.v_min;
  auto flag = [&](double value, double side, const char* name) {
    if (std::abs(value) >= 0.5 * side) {
      rep.flags.push_back(std::string(name) + " shift is not small against its side");
    }
  };
  flag(shift.du_low, width, "du_low");
  flag(shift.du_high, width, "du_high");
  flag(shift.dv_low, height, "dv_low");
  flag(shift.dv_high, height, "dv_high");
  return rep;
}

/// h = (1/sqrt 2) [[-1, 1], [1, 1]] as printed.
inline CMatrix hadamard_perturbation() {
  CMatrix h(2, 2);
  h << -1, 1, 1, 1;
  return h / std::sqrt(2.0);
}

/// u = (1/sqrt 2) * middle block [[-1, -1], [1, -1]] as printed.
inline CMatrix two_qubit_perturbation() {
  CMatrix u = CMatrix::Zero(4, 4);
  u(1, 1) = -1;
  u(1, 2) = -1;
  u(2, 1) = 1;
  u(2, 2) = -1;
  return u / std::sqrt(2.0);
}

/// d/dS of hadamard_family(S).
inline CMatrix hadamard_derivative(double sigma) {
  CMatrix d(2, 2);
  const double c = std::cos(sigma), s = std::sin(sigma);
  d << -s, c, c, s;
  return d;
}

struct PerturbedGate {
  GateMatrix first_order;
  GateMatrix exact;
  double defect = 0.0;  ///< ||exact - first_order||_F
};

namespace detail {

inline void require_small(double e, const char* who) {
  if (!(std::abs(e) < 0.3)) {
    throw std::invalid_argument(std::string(who) + ": |error| must be < 0.3");
  }
}

}  // namespace detail

/// U_H + eps h against hadamard_family(pi/4 + eps).
inline PerturbedGate perturbed_hadamard(double epsilon) {
  detail::require_small(epsilon, "perturbed_hadamard");
  PerturbedGate p;
  p.first_order =
      composed(hadamard_family(kPi / 4).matrix + epsilon * hadamard_perturbation());
  p.exact = hadamard_family(kPi / 4 + epsilon);
  p.defect = (p.exact.matrix - p.first_order.matrix).norm();
  return p;
}

/// U + delta u against exp(-i Sigma12 (pi/4 + delta)).
inline PerturbedGate perturbed_two_qubit(double delta) {
  detail::require_small(delta, "perturbed_two_qubit");
  const Generator g = Generator::sigma12();
  PerturbedGate p;
  p.first_order = composed(gate_from_area(g, kPi / 4).matrix + delta * two_qubit_perturbation());
  p.exact = gate_from_area(g, kPi / 4 + delta);
  p.defect = (p.exact.matrix - p.first_order.matrix).norm();
  return p;
}

/// Printed first-order CNOT U_CN + delta P_pi u, compared with both readings
/// of delta:
///   per_loop : each of the two loops carries area error delta,
///              P_pi U(pi/4 + delta)^2
///   total    : delta is the error of the squared gate,
///              P_pi U(pi/4 + delta/2)^2
/// `taylor_total` is the true first-order expansion of the total reading.
struct PerturbedCnot {
  GateMatrix first_order;
  GateMatrix exact_per_loop;
  GateMatrix exact_total;
  GateMatrix taylor_total;
  double defect_per_loop = 0.0;
  double defect_total = 0.0;
};

inline PerturbedCnot perturbed_cnot(double delta) {
  detail::require_small(delta, "perturbed_cnot");
  const Generator g = Generator::sigma12();
  const CMatrix p_pi = phase_gate(kPi).matrix;
  auto squared = [&](double sigma) {
    const CMatrix u = gate_from_area(g, sigma).matrix;
    return CMatrix(p_pi * u * u);
  };
  PerturbedCnot out;
  out.first_order =
      composed(controlled_not().matrix + delta * p_pi * two_qubit_perturbation());
  out.exact_per_loop = composed(squared(kPi / 4 + delta));
  out.exact_total = composed(squared(kPi / 4 + delta / 2));
  // d/d(delta) P_pi U(pi/2 + delta) at 0.
  out.taylor_total =
      composed(controlled_not().matrix + delta * p_pi * gate_derivative(g, kPi / 2));
  out.defect_per_loop = (out.exact_per_loop.matrix - out.first_order.matrix).norm();
  out.defect_total = (out.exact_total.matrix - out.first_order.matrix).norm();
  return out;
}

struct NoiseSummary {
  double nominal = 0.0;
  double mean = 0.0;
  double stddev = 0.0;
  double mean_drift = 0.0;  ///< mean - nominal
  int samples = 0;
};

/// Monte Carlo over zero-mean contour noise: every vertex moves by an
/// independent offset drawn uniformly from a disc of radius `amplitude`.
/// Offsets are used in antithetic pairs (z, -z), so `samples` is rounded up
/// to an even count.  The same seed gives the same unit offsets for any
/// amplitude.
inline NoiseSummary statistical_loop_noise(const LoopSpec& loop, double amplitude,
                                           std::uint64_t seed, int samples) {
  if (!(amplitude >= 0)) throw std::invalid_argument("statistical_loop_noise: amplitude < 0");
  if (samples < 2) throw std::invalid_argument("statistical_loop_noise: samples must be >= 2");
  if (amplitude > 0.1 * loop.diameter()) {
    throw std::invalid_argument("statistical_loop_noise: amplitude exceeds 0.1 x loop diameter");
  }
  const Plane plane = loop.plane();
  const auto base = loop.traversal();
  for (const Point2& p : base) {
    const bool clear = plane == Plane::III ? (p.u >= amplitude && p.v >= amplitude)
                                           : p.v >= amplitude;
    if (!clear) {
      throw std::invalid_argument(
          "statistical_loop_noise: a vertex is closer than `amplitude` to r = 0");
    }
  }

  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int pairs = (samples + 1) / 2;
  std::vector<Point2> offsets(base.size()), moved(base.size());
  std::vector<double> values;
  values.reserve(2 * pairs);
  for (int s = 0; s < pairs; ++s) {
    for (auto& z : offsets) {
      const double radius = std::sqrt(unit(gen));
      const double angle = 2 * kPi * unit(gen);
      z = {radius * std::cos(angle), radius * std::sin(angle)};
    }
    for (double sign : {1.0, -1.0}) {
      for (std::size_t k = 0; k < base.size(); ++k) {
        moved[k] = base[k] + (sign * amplitude) * offsets[k];
      }
      values.push_back(polygon_area_exact(plane, moved));
    }
  }

  NoiseSummary out;
  out.nominal = polygon_area_exact(plane, base);
  out.samples = static_cast<int>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / out.samples;
  double sq = 0.0;
  for (double v : values) sq += (v - out.mean) * (v - out.mean);
  out.stddev = std::sqrt(sq / (out.samples - 1));
  out.mean_drift = out.mean - out.nominal;
  return out;
}

}  // namespace optholo
