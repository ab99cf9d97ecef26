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

#include <stdexcept>
#include <string>

namespace optholo {

/// Raised when an iterative computation (quadrature, path ordering) does not
/// reach the requested tolerance.
class ConvergenceFailure : public std::runtime_error {
 public:
  ConvergenceFailure(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// Central differences lost to cancellation.
class StepTooSmall : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown only when the caller asks for strict truncation handling.
class TruncationViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Population of the top quartile of Fock levels, worst case over the states
/// that were inspected.  A result is trusted when that population stays below
/// `kTruncationBound`.
struct TruncationReport {
  double top_quartile_population = 0.0;
  bool trusted = true;

  void merge(const TruncationReport& other) {
    if (other.top_quartile_population > top_quartile_population) {
      top_quartile_population = other.top_quartile_population;
    }
    trusted = trusted && other.trusted;
  }
};

inline constexpr double kTruncationBound = 1e-8;

}  // namespace optholo
