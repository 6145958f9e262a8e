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

#include "dressmet/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "dressmet/errors.hpp"

namespace dressmet {

namespace {

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw DimensionError(std::string(what) + ": expected a non-empty square matrix");
  }
}

// Lexicographic order on (re, im) pairs.
bool lex_less(const CVector& a, const CVector& b) {
  for (Index k = 0; k < a.size(); ++k) {
    if (a[k].real() != b[k].real()) return a[k].real() < b[k].real();
    if (a[k].imag() != b[k].imag()) return a[k].imag() < b[k].imag();
  }
  return false;
}

void fix_phase(Eigen::Ref<CVector> v) {
  for (Index k = 0; k < v.size(); ++k) {
    const double mag = std::abs(v[k]);
    if (mag > 1e-12) {
      v *= std::conj(v[k]) / mag;
      v[k] = Complex(v[k].real(), 0.0);
      return;
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// HermitianOperator / StateVector

double max_hermitian_deviation(const CMatrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianOperator::HermitianOperator(const CMatrix& m, const Tolerances& tol) {
  require_square(m, "HermitianOperator");
  const double dev = max_hermitian_deviation(m);
  if (!(dev <= tol.hermitian)) {
    throw DomainError("HermitianOperator: matrix is not Hermitian (max deviation " +
                      std::to_string(dev) + ")");
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermitianOperator HermitianOperator::identity(Index dim) {
  return HermitianOperator(CMatrix::Identity(dim, dim), Unchecked{});
}

HermitianOperator HermitianOperator::zero(Index dim) {
  return HermitianOperator(CMatrix::Zero(dim, dim), Unchecked{});
}

HermitianOperator HermitianOperator::hermitian_part(const CMatrix& m) {
  require_square(m, "HermitianOperator::hermitian_part");
  return HermitianOperator(CMatrix(0.5 * (m + m.adjoint())), Unchecked{});
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& o) const {
  if (o.dim() != dim()) throw DimensionError("HermitianOperator::operator+: dimension mismatch");
  return HermitianOperator(CMatrix(m_ + o.m_), Unchecked{});
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& o) const {
  if (o.dim() != dim()) throw DimensionError("HermitianOperator::operator-: dimension mismatch");
  return HermitianOperator(CMatrix(m_ - o.m_), Unchecked{});
}

HermitianOperator HermitianOperator::operator-() const {
  return HermitianOperator(CMatrix(-m_), Unchecked{});
}

HermitianOperator HermitianOperator::operator*(double s) const {
  return HermitianOperator(CMatrix(s * m_), Unchecked{});
}

StateVector::StateVector(const CVector& v, const Tolerances& tol) {
  if (v.size() < 1) throw DimensionError("StateVector: empty vector");
  const double norm = v.norm();
  if (!(std::abs(norm - 1.0) <= tol.normalization)) {
    throw DomainError("StateVector: vector is not normalized (norm " + std::to_string(norm) + ")");
  }
  v_ = v;
}

StateVector StateVector::normalized(const CVector& v) {
  const double norm = v.norm();
  if (v.size() < 1 || !(norm > 0.0)) throw DomainError("StateVector::normalized: zero vector");
  return StateVector(CVector(v / norm));
}

StateVector StateVector::basis(Index dim, Index k) {
  if (k < 0 || k >= dim) throw DimensionError("StateVector::basis: index out of range");
  CVector v = CVector::Zero(dim);
  v[k] = 1.0;
  return StateVector(v);
}

// ---------------------------------------------------------------------------
// Products and inner products

Complex trace_inner(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("trace_inner: dimension mismatch");
  }
  return (a.conjugate().cwiseProduct(b)).sum();
}

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
  return HermitianOperator::hermitian_part(tensor(a.matrix(), b.matrix()));
}

CMatrix lift(const CMatrix& op, Index anc_dim) {
  if (anc_dim == 1) return op;
  return tensor(op, CMatrix::Identity(anc_dim, anc_dim));
}

double hs_inner(const HermitianOperator& a, const HermitianOperator& b, const Tolerances& tol) {
  if (a.dim() != b.dim()) throw DimensionError("hs_inner: dimension mismatch");
  // tr(ab) = tr(a^dag b) for Hermitian a.
  const Complex z = trace_inner(a.matrix(), b.matrix());
  const double scale = std::max(1.0, a.matrix().norm() * b.matrix().norm());
  if (std::abs(z.imag()) > tol.hermitian * scale) {
    throw NumericalError("hs_inner: trace of Hermitian product has an imaginary part");
  }
  return z.real();
}

// ---------------------------------------------------------------------------
// Spans

OperatorSpan orthonormal_span(std::span<const CMatrix> generators, Field field,
                              const Tolerances& tol) {
  if (generators.empty()) throw DomainError("orthonormal_span: no generators");
  const Index d = generators.front().rows();
  for (const auto& g : generators) {
    require_square(g, "orthonormal_span");
    if (g.rows() != d) throw DimensionError("orthonormal_span: generators differ in dimension");
    if (field == Field::Real && max_hermitian_deviation(g) > tol.hermitian * std::max(1.0, g.norm())) {
      throw DomainError("orthonormal_span: real span requires Hermitian generators");
    }
  }

  OperatorSpan span(d, field);
  auto coefficient = [field](const CMatrix& b, const CMatrix& m) {
    const Complex c = trace_inner(b, m);
    return field == Field::Real ? Complex(c.real(), 0.0) : c;
  };

  for (const auto& g : generators) {
    const double g_norm = g.norm();
    if (g_norm == 0.0) continue;
    CMatrix r = (field == Field::Real) ? CMatrix(0.5 * (g + g.adjoint())) : g;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : span.basis_) r -= coefficient(b, r) * b;
    }
    const double r_norm = r.norm();
    if (r_norm < tol.span_drop * std::max(1.0, g_norm)) continue;
    span.basis_.push_back(r / r_norm);
  }
  return span;
}

OperatorSpan orthonormal_span(const std::vector<HermitianOperator>& generators, Field field,
                              const Tolerances& tol) {
  std::vector<CMatrix> mats;
  mats.reserve(generators.size());
  for (const auto& g : generators) mats.push_back(g.matrix());
  return orthonormal_span(std::span<const CMatrix>(mats), field, tol);
}

CMatrix OperatorSpan::project(const CMatrix& m) const {
  if (m.rows() != dim_ || m.cols() != dim_) throw DimensionError("OperatorSpan::project: dimension mismatch");
  // Sequential (modified) projection twice; equivalent to sum <B_i,m> B_i in
  // exact arithmetic but less sensitive to loss of orthogonality.
  CMatrix residual = m;
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis_) {
      Complex c = trace_inner(b, residual);
      if (field_ == Field::Real) c = Complex(c.real(), 0.0);
      residual -= c * b;
    }
  }
  return m - residual;
}

double OperatorSpan::residual_norm(const CMatrix& m) const { return (m - project(m)).norm(); }

SpanDecomposition project_decompose(const HermitianOperator& g, const OperatorSpan& span,
                                    const Tolerances& tol) {
  if (g.dim() != span.dim()) throw DimensionError("project_decompose: dimension mismatch");
  const CMatrix par = span.project(g.matrix());
  const CMatrix perp = g.matrix() - par;
  const double scale = std::max(1.0, g.matrix().norm());
  if (max_hermitian_deviation(par) > tol.reconstruction * scale) {
    throw NumericalError("project_decompose: span is not closed under the adjoint");
  }
  SpanDecomposition out;
  out.parallel = HermitianOperator::hermitian_part(par);
  out.perpendicular = HermitianOperator::hermitian_part(perp);
  out.residual_norm = perp.norm();
  return out;
}

// ---------------------------------------------------------------------------
// Spectral helpers

Eigensystem eigh(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) throw NumericalError("eigh: eigensolver failed");
  const RVector& vals = solver.eigenvalues();
  CMatrix vecs = solver.eigenvectors();
  const Index n = vals.size();
  for (Index k = 0; k < n; ++k) fix_phase(vecs.col(k));

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) { return vals[a] < vals[b]; });

  // Within runs of numerically equal eigenvalues, order by vector entries.
  const double tie = 1e-12 * std::max(1.0, vals.cwiseAbs().maxCoeff());
  std::size_t start = 0;
  while (start < order.size()) {
    std::size_t stop = start + 1;
    while (stop < order.size() && vals[order[stop]] - vals[order[stop - 1]] < tie) ++stop;
    std::sort(order.begin() + static_cast<std::ptrdiff_t>(start),
              order.begin() + static_cast<std::ptrdiff_t>(stop),
              [&](Index a, Index b) { return lex_less(vecs.col(a), vecs.col(b)); });
    start = stop;
  }

  Eigensystem out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    out.values[k] = vals[order[static_cast<std::size_t>(k)]];
    out.vectors.col(k) = vecs.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

double operator_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

double trace_norm(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().sum();
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

PositiveNegativeSplit positive_negative_split(const HermitianOperator& g, const Tolerances& tol) {
  const double scale = g.matrix().norm();
  if (scale == 0.0) throw DomainError("positive_negative_split: zero operator");
  const double tr = g.matrix().trace().real();
  if (std::abs(tr) > tol.split_trace * std::max(1.0, scale)) {
    throw DomainError("positive_negative_split: operator is not traceless");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(g.matrix());
  const RVector& vals = solver.eigenvalues();
  const CMatrix& vecs = solver.eigenvectors();
  const double cutoff = tol.zero_eigenvalue * vals.cwiseAbs().maxCoeff();

  const Index d = g.dim();
  CMatrix pos = CMatrix::Zero(d, d);
  CMatrix neg = CMatrix::Zero(d, d);
  double pos_tr = 0.0;
  double neg_tr = 0.0;
  for (Index k = 0; k < vals.size(); ++k) {
    const CMatrix proj = vecs.col(k) * vecs.col(k).adjoint();
    if (vals[k] > cutoff) {
      pos += vals[k] * proj;
      pos_tr += vals[k];
    } else if (vals[k] < -cutoff) {
      neg -= vals[k] * proj;
      neg_tr -= vals[k];
    }
  }
  if (pos_tr == 0.0 || neg_tr == 0.0) {
    throw DomainError("positive_negative_split: operator is semidefinite, cannot be traceless");
  }
  PositiveNegativeSplit out;
  out.rho1 = HermitianOperator::hermitian_part(pos / pos_tr);
  out.rho0 = HermitianOperator::hermitian_part(neg / neg_tr);
  out.weight = 0.5 * (pos_tr + neg_tr);
  return out;
}

SpinMatrices spin_matrices(int two_s) {
  if (two_s < 1) throw DomainError("spin_matrices: two_s must be positive");
  const Index n = two_s + 1;
  const double s = 0.5 * two_s;
  // Row k carries m = s - k; S+ |m> = sqrt(s(s+1) - m(m+1)) |m+1>.
  CMatrix sp = CMatrix::Zero(n, n);
  CMatrix sz = CMatrix::Zero(n, n);
  for (Index k = 0; k < n; ++k) {
    const double m = s - static_cast<double>(k);
    sz(k, k) = m;
    if (k > 0) sp(k - 1, k) = std::sqrt(s * (s + 1.0) - m * (m + 1.0));
  }
  const CMatrix sm = sp.adjoint();
  const Complex i(0.0, 1.0);
  SpinMatrices out;
  out.x = HermitianOperator::hermitian_part(0.5 * (sp + sm));
  out.y = HermitianOperator::hermitian_part(-0.5 * i * (sp - sm));
  out.z = HermitianOperator::hermitian_part(sz);
  return out;
}

}  // namespace dressmet
