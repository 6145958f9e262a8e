// Copyright 2026 The dressmet Authors
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
#include <vector>

#include "dressmet/operators.hpp"
#include "dressmet/rng.hpp"

namespace fixtures {

using dressmet::CMatrix;
using dressmet::Complex;
using dressmet::CVector;
using dressmet::HermitianOperator;
using dressmet::Index;

// Spin-1 matrices typed in from their textbook form, independent of
// spin_matrices().
inline CMatrix sx1() {
  const double r = 1.0 / std::sqrt(2.0);
  CMatrix m = CMatrix::Zero(3, 3);
  m(0, 1) = m(1, 0) = m(1, 2) = m(2, 1) = r;
  return m;
}
inline CMatrix sy1() {
  const double r = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  CMatrix m = CMatrix::Zero(3, 3);
  m(0, 1) = -i * r;
  m(1, 0) = i * r;
  m(1, 2) = -i * r;
  m(2, 1) = i * r;
  return m;
}
inline CMatrix sz1() {
  CMatrix m = CMatrix::Zero(3, 3);
  m(0, 0) = 1.0;
  m(2, 2) = -1.0;
  return m;
}
inline CMatrix diag(std::initializer_list<double> v) {
  CMatrix m = CMatrix::Zero(static_cast<Index>(v.size()), static_cast<Index>(v.size()));
  Index k = 0;
  for (double x : v) m(k, k) = x, ++k;
  return m;
}
inline CMatrix pauli_x() {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = m(1, 0) = 1.0;
  return m;
}
inline CMatrix pauli_y() {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = Complex(0.0, -1.0);
  m(1, 0) = Complex(0.0, 1.0);
  return m;
}
inline CMatrix pauli_z() { return diag({1.0, -1.0}); }

inline HermitianOperator H(const CMatrix& m) { return HermitianOperator(m); }

inline std::vector<HermitianOperator> spin1_couplings() { return {H(sx1()), H(sy1()), H(sz1())}; }

inline CVector ket(Index dim, Index k) {
  CVector v = CVector::Zero(dim);
  v[k] = 1.0;
  return v;
}

// |psi+-> = (|+1> +- |-1>)/sqrt(2) in the (+1, 0, -1) ordering.
inline CVector psi_plus() { return (ket(3, 0) + ket(3, 2)) / std::sqrt(2.0); }
inline CVector psi_minus() { return (ket(3, 0) - ket(3, 2)) / std::sqrt(2.0); }

inline CMatrix random_hermitian(dressmet::CounterRng& rng, Index d) {
  CMatrix a(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) a(i, j) = Complex(rng.normal(), rng.normal());
  }
  return 0.5 * (a + a.adjoint());
}

inline CMatrix random_density(dressmet::CounterRng& rng, Index d) {
  CMatrix a(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) a(i, j) = Complex(rng.normal(), rng.normal());
  }
  CMatrix rho = a * a.adjoint();
  return rho / rho.trace().real();
}

}  // namespace fixtures
