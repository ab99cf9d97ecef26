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

// Gate-list circuits mapped onto holonomic loop schedules.
//
// Circuit text, one gate per line, '#' starts a comment:
//   H q<i>
//   CROT q<i> q<j>
//   CNOT q<i> q<j>
//   P(<phi>) q<i> [q<j>]

#include <cmath>
#include <istream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "optholo/error_model.hpp"
#include "optholo/holonomy.hpp"
#include "optholo/io.hpp"
#include "optholo/loops.hpp"

namespace optholo {

inline constexpr const char* kSupportedGates = "H, CROT, CNOT, P(<phi>)";

struct CircuitGate {
  std::string name;  ///< "H", "CROT", "CNOT" or "P"
  std::vector<int> qubits;
  double phi = 0.0;  ///< P only
  int line = 0;
};

inline std::vector<CircuitGate> parse_circuit(std::istream& in) {
  static const std::regex qubit_re(R"(q(\d+))");
  static const std::regex phase_re(R"(P\(\s*([-+0-9.eE]+)\s*\))");
  std::vector<CircuitGate> out;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = raw.substr(0, raw.find('#'));
    std::istringstream words(line);
    std::string head;
    if (!(words >> head)) continue;

    CircuitGate g;
    g.line = line_no;
    std::smatch m;
    if (head == "H" || head == "CROT" || head == "CNOT") {
      g.name = head;
    } else if (std::regex_match(head, m, phase_re)) {
      g.name = "P";
      try {
        std::size_t used = 0;
        g.phi = std::stod(m[1].str(), &used);
        if (used != m[1].str().size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": bad phase \"" + m[1].str() + "\"");
      }
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": unknown gate \"" + head +
                       "\"; supported gates: " + kSupportedGates);
    }
    std::string word;
    while (words >> word) {
      if (!std::regex_match(word, m, qubit_re)) {
        throw ParseError("line " + std::to_string(line_no) + ": expected q<index>, got \"" +
                         word + "\"");
      }
      g.qubits.push_back(std::stoi(m[1].str()));
    }
    const std::size_t want = g.name == "H" ? 1 : g.name == "P" ? 0 : 2;
    const bool ok = g.name == "P" ? (g.qubits.size() == 1 || g.qubits.size() == 2)
                                  : g.qubits.size() == want;
    if (!ok) {
      throw ParseError("line " + std::to_string(line_no) + ": wrong number of qubits for " +
                       g.name);
    }
    if (g.qubits.size() == 2 && g.qubits[0] == g.qubits[1]) {
      throw ParseError("line " + std::to_string(line_no) + ": control equals target");
    }
    out.push_back(std::move(g));
  }
  return out;
}

inline std::vector<CircuitGate> parse_circuit(const std::string& text) {
  std::istringstream in(text);
  return parse_circuit(in);
}

enum class EntryKind { hadamard_family, loop, phase };

inline const char* entry_kind_name(EntryKind k) {
  switch (k) {
    case EntryKind::hadamard_family: return "hadamard_family";
    case EntryKind::loop: return "loop";
    case EntryKind::phase: return "phase";
  }
  return "?";
}

struct ScheduleEntry {
  std::string source_gate;  ///< circuit gate this entry expands
  std::string label;        ///< "H", "CROT-loop", "P_pi", "P(phi)"
  EntryKind kind = EntryKind::loop;
  std::vector<int> qubits;
  double sigma = 0.0;  ///< gate parameter (phase angle for kind == phase)
  std::optional<LoopSpec> loop;
  std::string note;
  /// First-order bound on |Sigma error| from border shifts of the given
  /// magnitude, and the matching gate-norm error ||dU/dSigma||_F |epsilon|.
  double sigma_error_bound = 0.0;
  double gate_error_bound = 0.0;
};

struct CompiledSchedule {
  std::vector<ScheduleEntry> entries;
  double total_gate_error_bound = 0.0;
};

/// Rectangles that actually enclose Sigma = pi/4.
inline LoopSpec hadamard_realizing_loop() {
  // (pi/3)(1 - e^{-2 ln 2}) = pi/4
  return LoopSpec::rect(Plane::II, {0.0, kPi / 3, 0.0, std::log(2.0)});
}

inline LoopSpec crot_realizing_loop() {
  // (pi/24)(cosh(2 arccosh 2) - 1) = (pi/24) 6 = pi/4
  return LoopSpec::rect(Plane::III, {0.0, std::acosh(2.0), 0.0, kPi / 24});
}

namespace detail {

inline double sigma_error_bound(const LoopSpec& loop, double border_error) {
  const BorderSensitivity s = sensitivity(loop);
  return border_error *
         (std::abs(s.u_min) + std::abs(s.u_max) + std::abs(s.v_min) + std::abs(s.v_max));
}

}  // namespace detail

/// Expands each circuit gate into holonomic primitives.  Circuit gates stay
/// in time order; the entries of a multi-factor gate (CNOT) are listed in
/// matrix-product order, so the rightmost factor acts first.
inline CompiledSchedule compile(const std::vector<CircuitGate>& circuit,
                                double border_error) {
  if (!(border_error >= 0)) throw std::invalid_argument("compile: border_error must be >= 0");
  CompiledSchedule out;
  const double h_norm = hadamard_perturbation().norm();
  const double u_norm = two_qubit_perturbation().norm();

  auto crot = [&](const CircuitGate& g) {
    ScheduleEntry e;
    e.source_gate = g.name;
    e.label = "CROT-loop";
    e.kind = EntryKind::loop;
    e.qubits = g.qubits;
    e.sigma = kPi / 4;
    e.loop = crot_realizing_loop();
    e.note = "Sigma12 loop in plane III";
    e.sigma_error_bound = detail::sigma_error_bound(*e.loop, border_error);
    e.gate_error_bound = u_norm * e.sigma_error_bound;
    return e;
  };
  auto phase = [&](const CircuitGate& g, double phi, std::string label) {
    ScheduleEntry e;
    e.source_gate = g.name;
    e.label = std::move(label);
    e.kind = EntryKind::phase;
    e.qubits = g.qubits;
    e.sigma = phi;
    e.note = "abstract control-phase primitive diag(1, e^{i phi}, 1, 1); no loop";
    return e;
  };

  for (const CircuitGate& g : circuit) {
    if (g.name == "H") {
      ScheduleEntry e;
      e.source_gate = g.name;
      e.label = "H";
      e.kind = EntryKind::hadamard_family;
      e.qubits = g.qubits;
      e.sigma = kPi / 4;
      e.loop = hadamard_realizing_loop();
      e.note =
          "hadamard_family(pi/4); the plane II loop gives exp(-i Sigma2 pi/4), equal to "
          "H only up to the corrective factor diag(1,-1), which is convention-dependent";
      e.sigma_error_bound = detail::sigma_error_bound(*e.loop, border_error);
      e.gate_error_bound = h_norm * e.sigma_error_bound;
      out.entries.push_back(std::move(e));
    } else if (g.name == "CROT") {
      out.entries.push_back(crot(g));
    } else if (g.name == "CNOT") {
      out.entries.push_back(phase(g, kPi, "P_pi"));
      out.entries.push_back(crot(g));
      out.entries.push_back(crot(g));
    } else if (g.name == "P") {
      out.entries.push_back(phase(g, g.phi, "P(phi)"));
    } else {
      throw std::invalid_argument(std::string("compile: unsupported gate ") + g.name +
                                  "; supported gates: " + kSupportedGates);
    }
  }
  for (const auto& e : out.entries) out.total_gate_error_bound += e.gate_error_bound;
  return out;
}

}  // namespace optholo
