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

// Kicked adiabatic evolution: Kerr dwell periods alternated with
// instantaneous control kicks that step the dressing along a loop.  Works in
// the co-moving frame, where a kick from p_k to p_{k+1} is the frame-change
// unitary W(p_{k+1})^dag W(p_k) and the Kerr dwell is diagonal.

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "optholo/connection.hpp"
#include "optholo/fock.hpp"
#include "optholo/holonomy.hpp"

namespace optholo {

struct KickSchedule {
  LoopSpec loop;
  int kick_count = 1024;
  double chi = 1.0;
  /// Kerr dwell per kick in units of 1/chi.  pi/4 gives the n = 2 level a
  /// quarter turn per dwell.
  double delta_t = kPi / 4;
  int cutoff = 40;
};

inline constexpr double kMaxKickStep = 0.05;

struct KickedResult {
  CMatrix code_map;  ///< re-unitarised code-space map
  double leakage = 0.0;
  double fidelity_to_prediction = 0.0;
  GateMatrix prediction;
  double raw_unitarity_defect = 0.0;  ///< of the projected map before polar
  bool adiabaticity_failure = false;  ///< leakage > 0.5
  TruncationReport truncation;
  std::vector<double> profile;  ///< leakage after each kick
};

namespace detail {

inline void validate(const KickSchedule& s, const std::vector<Point2>& pts) {
  if (s.kick_count < 16) throw std::invalid_argument("kick schedule: kick_count must be >= 16");
  if (!(s.delta_t > 0)) throw std::invalid_argument("kick schedule: delta_t must be > 0");
  if (!(s.chi > 0)) throw std::invalid_argument("kick schedule: chi must be > 0");
  for (std::size_t k = 1; k < pts.size(); ++k) {
    if (length(pts[k] - pts[k - 1]) > kMaxKickStep) {
      throw std::invalid_argument("kick schedule: control step exceeds 0.05; raise kick_count");
    }
  }
}

inline double worst_population_loss(const CMatrix& code, const CMatrix& states) {
  const CMatrix kept = code.adjoint() * states;
  double worst = 0.0;
  for (Eigen::Index b = 0; b < states.cols(); ++b) {
    worst = std::max(worst, 1.0 - kept.col(b).squaredNorm());
  }
  return std::max(worst, 0.0);
}

}  // namespace detail

inline KickedResult run_kicked(const KickSchedule& schedule,
                               const FrameConvention& convention) {
  const Plane plane = schedule.loop.plane();
  const auto pts = discretize(schedule.loop, schedule.kick_count);
  detail::validate(schedule, pts);

  const FrameEngine engine(plane, schedule.cutoff, convention);
  const CMatrix kerr = kerr_hamiltonian(schedule.chi, schedule.cutoff, engine.mode_count()).matrix;
  CVector dwell(engine.dimension());
  for (Eigen::Index k = 0; k < dwell.size(); ++k) {
    dwell(k) = std::exp(-kI * kerr(k, k).real() * schedule.delta_t);
  }

  const CMatrix& code = engine.code_states();
  CMatrix psi = code;
  KickedResult out;
  out.profile.reserve(schedule.kick_count);
  for (int k = 0; k < schedule.kick_count; ++k) {
    psi = dwell.asDiagonal() * psi;
    psi = engine.undress(pts[k + 1], engine.dress(pts[k], psi));
    out.profile.push_back(detail::worst_population_loss(code, psi));
    out.truncation.merge(
        assess_truncation(engine.frame(pts[k + 1]), engine.cutoff(), engine.mode_count()));
  }

  const CMatrix projected = code.adjoint() * psi;
  out.raw_unitarity_defect = unitarity_defect(projected);
  out.code_map = polar_unitary(projected);
  out.leakage = out.profile.back();
  out.adiabaticity_failure = out.leakage > 0.5;

  const LoopGate formula = gate_for_loop(schedule.loop);
  out.prediction = gate_from_area(formula.generator, kCalibratedSign * formula.area.sigma);
  out.fidelity_to_prediction =
      std::abs((out.code_map.adjoint() * out.prediction.matrix).trace()) /
      static_cast<double>(out.code_map.rows());
  return out;
}

inline KickedResult run_kicked(const KickSchedule& schedule) {
  return run_kicked(schedule, default_convention(schedule.loop.plane()));
}

inline GateMatrix as_gate(const KickedResult& r) {
  return {r.code_map, Provenance::kicked_oracle, r.raw_unitarity_defect};
}

/// (kick index, leakage after that kick), one entry per kick.
inline std::vector<std::pair<int, double>> leakage_profile(const KickSchedule& schedule) {
  const KickedResult r = run_kicked(schedule);
  std::vector<std::pair<int, double>> out;
  out.reserve(r.profile.size());
  for (std::size_t k = 0; k < r.profile.size(); ++k) {
    out.emplace_back(static_cast<int>(k), r.profile[k]);
  }
  return out;
}

}  // namespace optholo
