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

#include <gtest/gtest.h>

#include <random>

#include "optholo/linalg.hpp"

namespace optholo::testing {

inline double frob(const CMatrix& a, const CMatrix& b) { return (a - b).norm(); }

inline double max_entry(const CMatrix& a, const CMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline CMatrix random_matrix(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> nd;
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(nd(rng), nd(rng));
  }
  return m;
}

inline CMatrix random_skew_hermitian(std::mt19937_64& rng, Eigen::Index n) {
  const CMatrix m = random_matrix(rng, n);
  return 0.5 * (m - m.adjoint());
}

inline CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}

}  // namespace optholo::testing
