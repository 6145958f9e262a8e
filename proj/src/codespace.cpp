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

#include "dressmet/codespace.hpp"

#include <cmath>
#include <string>

#include "dressmet/errors.hpp"

namespace dressmet {

CodeSpace::CodeSpace(StateVector psi0, StateVector psi1, Index sys_dim, Index anc_dim, const Tolerances& tol)
    : psi0_(std::move(psi0)), psi1_(std::move(psi1)), sys_dim_(sys_dim), anc_dim_(anc_dim) {
  if (sys_dim < 2 || anc_dim < 1) throw DimensionError("CodeSpace: need sys_dim >= 2 and anc_dim >= 1");
  if (psi0_.dim() != dim() || psi1_.dim() != dim()) {
    throw DimensionError("CodeSpace: state dimension " + std::to_string(psi0_.dim()) + " != sys_dim * anc_dim = " +
                         std::to_string(dim()));
  }
  const double overlap = std::abs(psi0_.amplitudes().dot(psi1_.amplitudes()));
  if (overlap > tol.orthogonality) {
    throw DomainError("CodeSpace: code states are not orthogonal (|<0|1>| = " + std::to_string(overlap) + ")");
  }
}

CMatrix CodeSpace::isometry() const {
  CMatrix v(dim(), 2);
  v.col(0) = psi0_.amplitudes();
  v.col(1) = psi1_.amplitudes();
  return v;
}

CMatrix CodeSpace::projector() const { return psi0_.projector() + psi1_.projector(); }

CMatrix CodeSpace::reduced_state(int i) const {
  if (i != 0 && i != 1) throw DomainError("CodeSpace::reduced_state: index must be 0 or 1");
  return partial_trace_ancilla(i == 0 ? psi0_.amplitudes() : psi1_.amplitudes(), sys_dim_, anc_dim_);
}

CMatrix CodeSpace::lift_system(const CMatrix& op) const {
  if (op.rows() != op.cols()) throw DimensionError("CodeSpace: operator is not square");
  if (op.rows() == dim()) return op;
  if (op.rows() == sys_dim_) return lift(op, anc_dim_);
  throw DimensionError("CodeSpace: operator of dimension " + std::to_string(op.rows()) +
                       " acts on neither the system nor the full space");
}

CMatrix partial_trace_ancilla(const CVector& psi, Index sys_dim, Index anc_dim) {
  if (psi.size() != sys_dim * anc_dim) throw DimensionError("partial_trace_ancilla: dimension mismatch");
  // psi reshaped as a sys x anc coefficient matrix M; rho = M M^dag.
  CMatrix m(sys_dim, anc_dim);
  for (Index s = 0; s < sys_dim; ++s) {
    for (Index a = 0; a < anc_dim; ++a) m(s, a) = psi[s * anc_dim + a];
  }
  return m * m.adjoint();
}

namespace {

void validate_density(const CMatrix& rho, const char* name, const Tolerances& tol) {
  if (rho.rows() != rho.cols()) throw DimensionError(std::string("purify_pair: ") + name + " is not square");
  if (max_hermitian_deviation(rho) > tol.reconstruction) {
    throw DomainError(std::string("purify_pair: ") + name + " is not Hermitian");
  }
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > tol.reconstruction) {
    throw DomainError(std::string("purify_pair: ") + name + " has trace " + std::to_string(tr));
  }
  const CMatrix h = 0.5 * (rho + rho.adjoint());
  const double lmin = Eigen::SelfAdjointEigenSolver<CMatrix>(h, Eigen::EigenvaluesOnly).eigenvalues()[0];
  if (lmin < -tol.reconstruction) {
    throw DomainError(std::string("purify_pair: ") + name + " is not positive semidefinite (min eigenvalue " +
                      std::to_string(lmin) + ")");
  }
}

struct Spectral {
  RVector p;
  CMatrix vecs;
};

Spectral support(const CMatrix& rho, const Tolerances& tol) {
  const Eigensystem es = eigh(HermitianOperator::hermitian_part(rho));
  std::vector<Index> keep;
  for (Index k = es.values.size() - 1; k >= 0; --k) {
    if (es.values[k] > tol.zero_eigenvalue) keep.push_back(k);
  }
  Spectral s;
  s.p.resize(static_cast<Index>(keep.size()));
  s.vecs.resize(rho.rows(), static_cast<Index>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i) {
    s.p[static_cast<Index>(i)] = es.values[keep[i]];
    s.vecs.col(static_cast<Index>(i)) = es.vectors.col(keep[i]);
  }
  return s;
}

CVector purification(const Spectral& s, Index sys_dim, Index anc_dim, Index offset) {
  CVector psi = CVector::Zero(sys_dim * anc_dim);
  for (Index k = 0; k < s.p.size(); ++k) {
    const double amp = std::sqrt(s.p[k]);
    for (Index x = 0; x < sys_dim; ++x) psi[x * anc_dim + offset + k] += amp * s.vecs(x, k);
  }
  return psi;
}

}  // namespace

CodeSpace purify_pair(const CMatrix& rho0, const CMatrix& rho1, const Tolerances& tol) {
  validate_density(rho0, "rho0", tol);
  validate_density(rho1, "rho1", tol);
  if (rho0.rows() != rho1.rows()) throw DimensionError("purify_pair: rho0 and rho1 differ in dimension");
  const Index d = rho0.rows();
  const Spectral s0 = support(rho0, tol);
  const Spectral s1 = support(rho1, tol);
  const Index r = std::max<Index>(1, std::max(s0.p.size(), s1.p.size()));
  const Index anc = 2 * r;
  CodeSpace code(StateVector::normalized(purification(s0, d, anc, 0)),
                 StateVector::normalized(purification(s1, d, anc, r)), d, anc, tol);
  const double err = std::max((code.reduced_state(0) - rho0).cwiseAbs().maxCoeff(),
                              (code.reduced_state(1) - rho1).cwiseAbs().maxCoeff());
  if (err > tol.reconstruction) {
    throw NumericalError("purify_pair: partial trace misses the input by " + std::to_string(err));
  }
  return code;
}

CodeSpace code_from_sdp(const HermitianOperator& g_tilde, double cutoff) {
  // Interior-point iterates satisfy tr G~ = 0 only to the solver tolerance;
  // project the residual out before splitting.
  const Index d = g_tilde.dim();
  const double tr = g_tilde.matrix().trace().real();
  if (std::abs(tr) > 1e-6 * std::max(1.0, g_tilde.matrix().norm())) {
    throw DomainError("code_from_sdp: G~ is not traceless (trace " + std::to_string(tr) + ")");
  }
  const HermitianOperator traceless =
      HermitianOperator::hermitian_part(g_tilde.matrix() - (tr / static_cast<double>(d)) * CMatrix::Identity(d, d));
  Tolerances t;
  t.zero_eigenvalue = cutoff;
  const PositiveNegativeSplit split = positive_negative_split(traceless, t);
  // The reduced states may drop eigenvalues below the cutoff, so the
  // reconstruction check is loosened to match.
  t.reconstruction = std::max(t.reconstruction, 10.0 * cutoff * static_cast<double>(g_tilde.dim()));
  t.zero_eigenvalue = 1e-14;
  return purify_pair(split.rho0.matrix(), split.rho1.matrix(), t);
}

ConditionReport check_conditions(const CodeSpace& code, const HermitianOperator& g,
                                 const std::vector<HermitianOperator>& couplings,
                                 const std::optional<EigenContext>& context) {
  const CVector& p0 = code.psi0().amplitudes();
  const CVector& p1 = code.psi1().amplitudes();
  const CMatrix v = code.isometry();
  ConditionReport r;
  const CMatrix gl = code.lift_system(g.matrix());
  r.signal = p1.dot(gl * p1).real() - p0.dot(gl * p0).real();

  std::vector<CMatrix> lifted;
  for (const auto& a : couplings) lifted.push_back(code.lift_system(a.matrix()));
  for (const auto& a : lifted) {
    const CMatrix m = v.adjoint() * a * v;
    r.dephasing_violation = std::max(r.dephasing_violation, std::abs(m(0, 0) - m(1, 1)));
    r.relaxation_violation = std::max({r.relaxation_violation, std::abs(m(0, 1)), std::abs(m(1, 0))});
    const CMatrix dev = m - (0.5 * m.trace()) * CMatrix::Identity(2, 2);
    r.kl_violation = std::max(r.kl_violation, dev.norm());
  }

  if (context) {
    const CMatrix& e = context->vectors;
    if (e.rows() != code.dim()) throw DimensionError("check_conditions: eigenbasis dimension mismatch");
    std::vector<Index> outside;
    for (Index i = 0; i < e.cols(); ++i) {
      if ((v.adjoint() * e.col(i)).norm() < 1e-8) outside.push_back(i);
    }
    if (static_cast<Index>(outside.size()) != code.dim() - 2) {
      throw DomainError("check_conditions: code space is not spanned by eigenvectors of the context");
    }
    double worst = 0.0;
    for (const auto& a : lifted) {
      const CMatrix av = a * v;
      for (Index i : outside) worst = std::max(worst, (e.col(i).adjoint() * av).cwiseAbs().maxCoeff());
    }
    r.excitation_violation = worst;
  }
  return r;
}

EffectiveGenerator effective_generator(const CodeSpace& code, const HermitianOperator& g) {
  const CMatrix gl = code.lift_system(g.matrix());
  EffectiveGenerator e;
  e.g00 = code.psi0().amplitudes().dot(gl * code.psi0().amplitudes()).real();
  e.g11 = code.psi1().amplitudes().dot(gl * code.psi1().amplitudes()).real();
  e.delta = e.g11 - e.g00;
  e.var = 0.25 * e.delta * e.delta;
  return e;
}

HermitianOperator control_hamiltonian(const CodeSpace& code, const HermitianOperator& h_free,
                                      const ControlLevels& levels) {
  const double gap_floor = 1e-12;
  if (std::abs(levels.lambda0 - levels.lambda1) < gap_floor) {
    throw DomainError("control_hamiltonian: lambda0 and lambda1 coincide");
  }
  if (std::abs(levels.lambda0 - levels.complement) < gap_floor ||
      std::abs(levels.lambda1 - levels.complement) < gap_floor) {
    throw DomainError("control_hamiltonian: a code level coincides with the complement level");
  }
  const Index d = code.dim();
  const CMatrix hf = code.lift_system(h_free.matrix());
  const CMatrix p0 = code.psi0().projector();
  const CMatrix p1 = code.psi1().projector();
  const CMatrix hc = -hf + levels.lambda0 * p0 + levels.lambda1 * p1 +
                     levels.complement * (CMatrix::Identity(d, d) - p0 - p1);
  const HermitianOperator out = HermitianOperator::hermitian_part(hc);

  const CMatrix hs = hf + out.matrix();
  const double r0 = (hs * code.psi0().amplitudes() - levels.lambda0 * code.psi0().amplitudes()).norm();
  const double r1 = (hs * code.psi1().amplitudes() - levels.lambda1 * code.psi1().amplitudes()).norm();
  if (std::max(r0, r1) > 1e-10 * std::max(1.0, std::abs(levels.complement))) {
    throw NumericalError("control_hamiltonian: eigenvector residual " + std::to_string(std::max(r0, r1)));
  }
  return out;
}

Dressing two_level_dressing(const CodeSpace& code, double nu0, const std::vector<HermitianOperator>& couplings) {
  if (!(nu0 > 0.0)) throw DomainError("two_level_dressing: nu0 must be positive");
  const Index d = code.dim();
  std::vector<HermitianOperator> lifted;
  for (const auto& a : couplings) lifted.push_back(HermitianOperator::hermitian_part(code.lift_system(a.matrix())));
  Dressing out{HermitianOperator::hermitian_part(nu0 * (CMatrix::Identity(d, d) - code.projector())), {}};
  out.lindblads = jump_operators(out.h_c, lifted);
  return out;
}

KnillLaflamme verify_knill_laflamme(const CodeSpace& code, const std::vector<CMatrix>& lindblads,
                                    const Tolerances& tol) {
  const CMatrix v = code.isometry();
  const CMatrix id2 = CMatrix::Identity(2, 2);
  auto deviation = [&](const CMatrix& m) { return (m - (0.5 * m.trace()) * id2).norm(); };
  std::vector<CMatrix> lv;
  for (const auto& l : lindblads) {
    if (l.rows() != code.dim() || l.cols() != code.dim()) {
      throw DimensionError("verify_knill_laflamme: Lindblad operator dimension differs from the code space");
    }
    lv.push_back(l * v);
  }
  KnillLaflamme out;
  for (const auto& x : lv) out.violation = std::max(out.violation, deviation(v.adjoint() * x));
  for (const auto& x : lv) {
    for (const auto& y : lv) out.violation = std::max(out.violation, deviation(x.adjoint() * y));
  }
  out.ok = out.violation <= tol.knill_laflamme;
  return out;
}

}  // namespace dressmet
