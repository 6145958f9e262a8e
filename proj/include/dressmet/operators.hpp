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

// Dense operator algebra on small Hilbert spaces: Hermitian operators, state
// vectors, trace-inner-product spans and the decompositions built on them.

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dressmet/tolerances.hpp"

namespace dressmet {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// A square complex matrix equal to its conjugate transpose.
///
/// Construction validates Hermiticity to `Tolerances::hermitian` (max-abs,
/// entrywise) and then stores the exact Hermitian part, so rounding noise
/// from products such as A*A never leaks downstream.
class HermitianOperator {
 public:
  HermitianOperator() : m_(CMatrix::Zero(1, 1)) {}
  explicit HermitianOperator(const CMatrix& m, const Tolerances& tol = kDefaultTolerances);

  static HermitianOperator identity(Index dim);
  static HermitianOperator zero(Index dim);
  /// (m + m^dag)/2 without validation.
  static HermitianOperator hermitian_part(const CMatrix& m);

  const CMatrix& matrix() const { return m_; }
  Index dim() const { return m_.rows(); }

  HermitianOperator operator+(const HermitianOperator& o) const;
  HermitianOperator operator-(const HermitianOperator& o) const;
  HermitianOperator operator-() const;
  HermitianOperator operator*(double s) const;
  friend HermitianOperator operator*(double s, const HermitianOperator& h) { return h * s; }

 private:
  struct Unchecked {};
  HermitianOperator(CMatrix m, Unchecked) : m_(std::move(m)) {}
  CMatrix m_;
};

/// A unit-norm complex vector.
class StateVector {
 public:
  StateVector() : v_(CVector::Ones(1)) {}
  explicit StateVector(const CVector& v, const Tolerances& tol = kDefaultTolerances);
  /// Normalizes `v`; throws DomainError on a zero vector.
  static StateVector normalized(const CVector& v);
  static StateVector basis(Index dim, Index k);

  const CVector& amplitudes() const { return v_; }
  Index dim() const { return v_.size(); }
  CMatrix projector() const { return v_ * v_.adjoint(); }

 private:
  CVector v_;
};

enum class Field { Real, Complex };

/// Orthonormal basis (under tr(A^dag B)) of an operator subspace.
class OperatorSpan {
 public:
  Index dim() const { return dim_; }
  Field field() const { return field_; }
  std::size_t size() const { return basis_.size(); }
  const std::vector<CMatrix>& basis() const { return basis_; }

  /// Orthogonal projection of m onto the span. For a Real span only real
  /// coefficients are used.
  CMatrix project(const CMatrix& m) const;
  /// Frobenius norm of m minus its projection.
  double residual_norm(const CMatrix& m) const;

 private:
  friend OperatorSpan orthonormal_span(std::span<const CMatrix>, Field, const Tolerances&);
  OperatorSpan(Index dim, Field field) : dim_(dim), field_(field) {}
  Index dim_;
  Field field_;
  std::vector<CMatrix> basis_;
};

/// tr(a^dag b).
Complex trace_inner(const CMatrix& a, const CMatrix& b);

CMatrix tensor(const CMatrix& a, const CMatrix& b);
HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);
/// op (x) 1_anc.
CMatrix lift(const CMatrix& op, Index anc_dim);

/// tr(ab) for Hermitian a, b. The imaginary part is checked and dropped.
double hs_inner(const HermitianOperator& a, const HermitianOperator& b,
                const Tolerances& tol = kDefaultTolerances);

/// Modified Gram-Schmidt with one re-orthogonalization pass. Generators whose
/// residual falls below `span_drop` (relative to their own norm) are dropped.
/// A Real span requires Hermitian generators.
OperatorSpan orthonormal_span(std::span<const CMatrix> generators, Field field,
                              const Tolerances& tol = kDefaultTolerances);
OperatorSpan orthonormal_span(const std::vector<HermitianOperator>& generators, Field field,
                              const Tolerances& tol = kDefaultTolerances);

struct SpanDecomposition {
  HermitianOperator parallel;
  HermitianOperator perpendicular;
  double residual_norm = 0.0;  // ||perpendicular||_F
};

/// g = parallel + perpendicular with perpendicular orthogonal to the span.
/// For a Complex span that is not closed under the adjoint the parts may not
/// be Hermitian; that case raises NumericalError.
SpanDecomposition project_decompose(const HermitianOperator& g, const OperatorSpan& span,
                                    const Tolerances& tol = kDefaultTolerances);

struct PositiveNegativeSplit {
  HermitianOperator rho1;  // normalized positive part
  HermitianOperator rho0;  // normalized magnitude of the negative part
  double weight = 0.0;     // tr|g| / 2
};

/// Writes a traceless g as weight * (rho1 - rho0) with orthogonal supports.
/// Zero eigenvalues belong to neither part.
PositiveNegativeSplit positive_negative_split(const HermitianOperator& g,
                                              const Tolerances& tol = kDefaultTolerances);

struct SpinMatrices {
  HermitianOperator x, y, z;
};

/// Spin-s matrices for s = two_s/2 in the S_z basis ordered m = s, s-1, ..., -s.
SpinMatrices spin_matrices(int two_s);

struct Eigensystem {
  RVector values;   // ascending
  CMatrix vectors;  // columns; first significant entry real positive
};

/// Deterministic Hermitian eigendecomposition: ascending eigenvalues, global
/// phase fixed per vector, ties ordered lexicographically by entries.
Eigensystem eigh(const HermitianOperator& h);

double operator_norm(const CMatrix& m);
double trace_norm(const HermitianOperator& h);
CMatrix commutator(const CMatrix& a, const CMatrix& b);
double max_hermitian_deviation(const CMatrix& m);

}  // namespace dressmet
