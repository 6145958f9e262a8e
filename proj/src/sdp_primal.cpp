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

// Log-det barrier interior-point solver for the code-design SDP.
//
// The iterate is carried as the two cone slacks U = X - G~ and V = X + G~, so
// G~ = (V - U)/2 and X = (U + V)/2. For barrier parameter mu the centering
// problem is
//
//   minimize  -tr(G (V - U))/(2 mu) - log det U - log det V - log(2 - tr(U + V)/2)
//   subject to tr(C_k (V - U)) = 0.
//
// In these variables the Hessian of the log-det terms has the explicit inverse
// D -> U D U, so Newton steps never form the (G~, X) normal matrix, whose
// condition number grows like 1/mu^2 near a degenerate optimal face.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "dressmet/errors.hpp"
#include "dressmet/sdp.hpp"

namespace dressmet {

// ---------------------------------------------------------------------------
// Problem and constructive bound

SdpProblem SdpProblem::from_couplings(const HermitianOperator& g, const std::vector<HermitianOperator>& couplings) {
  SdpProblem p;
  p.g = g;
  p.constraints.push_back(HermitianOperator::identity(g.dim()));
  for (const auto& a : couplings) p.constraints.push_back(a);
  p.validate();
  return p;
}

void SdpProblem::validate() const {
  if (constraints.empty()) throw DomainError("SdpProblem: constraint list must start with the identity");
  const Index d = g.dim();
  for (const auto& c : constraints) {
    if (c.dim() != d) throw DimensionError("SdpProblem: constraint dimension differs from generator");
  }
  if ((constraints.front().matrix() - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-12) {
    throw DomainError("SdpProblem: first constraint must be the identity");
  }
}

ConstructiveBound constructive_bound(const SdpProblem& p, const Tolerances& tol) {
  p.validate();
  const OperatorSpan span = orthonormal_span(p.constraints, Field::Real, tol);
  const SpanDecomposition dec = project_decompose(p.g, span, tol);
  ConstructiveBound out;
  out.g_perp = dec.perpendicular;
  if (dec.residual_norm <= tol.membership) return out;
  const PositiveNegativeSplit split = positive_negative_split(dec.perpendicular, tol);
  const double sq = dec.perpendicular.matrix().squaredNorm();  // tr(g_perp^2)
  out.value = 2.0 * sq / (2.0 * split.weight);                  // tr|g_perp| = 2 weight
  out.rho0 = split.rho0;
  out.rho1 = split.rho1;
  return out;
}

ConstructiveBound constructive_bound(const HermitianOperator& g, const std::vector<HermitianOperator>& couplings,
                                     const Tolerances& tol) {
  return constructive_bound(SdpProblem::from_couplings(g, couplings), tol);
}

FeasibilityAudit audit_feasibility(const SdpProblem& p, const HermitianOperator& g_tilde, const HermitianOperator& x) {
  FeasibilityAudit a;
  a.objective = trace_inner(p.g.matrix(), g_tilde.matrix()).real();
  for (const auto& c : p.constraints) {
    a.equality_violation = std::max(a.equality_violation, std::abs(trace_inner(c.matrix(), g_tilde.matrix())));
  }
  auto min_eig = [](const CMatrix& m) {
    return Eigen::SelfAdjointEigenSolver<CMatrix>(m, Eigen::EigenvaluesOnly).eigenvalues()[0];
  };
  const double lo = std::min(min_eig(x.matrix() - g_tilde.matrix()), min_eig(x.matrix() + g_tilde.matrix()));
  a.cone_violation = std::max(0.0, -lo);
  a.trace_excess = std::max(0.0, x.matrix().trace().real() - 2.0);
  return a;
}

// ---------------------------------------------------------------------------
// Barrier solver

namespace {

struct Pair {
  CMatrix u;
  CMatrix v;
};

double inner(const Pair& a, const Pair& b) {
  return trace_inner(a.u, b.u).real() + trace_inner(a.v, b.v).real();
}

// Lower Cholesky factor of a Hermitian matrix, or nothing if it is not
// positive definite.
std::optional<Eigen::LLT<CMatrix>> cholesky(const CMatrix& m) {
  Eigen::LLT<CMatrix> llt(m);
  if (llt.info() != Eigen::Success) return std::nullopt;
  for (Index i = 0; i < m.rows(); ++i) {
    if (!(llt.matrixL()(i, i).real() > 0.0)) return std::nullopt;
  }
  return llt;
}

double log_det(const Eigen::LLT<CMatrix>& llt) {
  double s = 0.0;
  for (Index i = 0; i < llt.matrixL().rows(); ++i) s += std::log(llt.matrixL()(i, i).real());
  return 2.0 * s;
}

class Barrier {
 public:
  Barrier(const SdpProblem& p, std::vector<CMatrix> constraint_basis)
      : g_(p.g.matrix()), cons_(std::move(constraint_basis)), d_(p.dim()) {}

  double slack(const Pair& z) const { return 2.0 - 0.5 * (z.u.trace().real() + z.v.trace().real()); }

  double objective(const Pair& z) const { return 0.5 * trace_inner(g_, z.v - z.u).real(); }

  std::optional<double> value(const Pair& z, double t) const {
    const double s = slack(z);
    if (!(s > 0.0)) return std::nullopt;
    const auto lu = cholesky(z.u);
    const auto lv = cholesky(z.v);
    if (!lu || !lv) return std::nullopt;
    return -t * objective(z) - log_det(*lu) - log_det(*lv) - std::log(s);
  }

  // Newton direction for the equality-constrained centering problem, by
  // eliminating the step through the explicit inverse Hessian and solving the
  // small Schur system for the multipliers `lambda` (on the orthonormal
  // constraint basis). Returns the squared decrement.
  // The step also cancels any residual in the equality constraints.
  double newton_step(const Pair& z, double t, Pair& step, RVector& lambda) const {
    const double s = slack(z);
    const CMatrix id = CMatrix::Identity(d_, d_);
    const auto lu = cholesky(z.u);
    const auto lv = cholesky(z.v);
    if (!lu || !lv) throw NumericalError("solve_primal: slack left the cone");

    // H = B + q q^T with B(DU, DV) = (U^-1 DU U^-1, V^-1 DV V^-1), q = (1, 1)/(2s).
    const Pair bq{(z.u * z.u) / (2.0 * s), (z.v * z.v) / (2.0 * s)};
    const double qbq = (z.u.squaredNorm() + z.v.squaredNorm()) / (4.0 * s * s);
    auto sherman_morrison = [&](Pair out) {
      const double qr = (out.u.trace().real() + out.v.trace().real()) / (2.0 * s);  // q^T B^-1 r
      const double coef = qr / (1.0 + qbq);
      out.u -= coef * bq.u;
      out.v -= coef * bq.v;
      return out;
    };
    auto apply_inverse = [&](const Pair& r) { return sherman_morrison(Pair{z.u * r.u * z.u, z.v * r.v * z.v}); };

    // The gradient holds U^-1 and V^-1, which B^-1 maps back to U and V, so
    // H^-1 (-grad) is formed without inverting the slacks. Explicit inverses
    // lose all precision once mu approaches sqrt(eps).
    const CMatrix ru = -(0.5 * t) * g_ - (0.5 / s) * id;
    const CMatrix rv = (0.5 * t) * g_ - (0.5 / s) * id;
    const Pair hg = sherman_morrison(Pair{z.u * ru * z.u + z.u, z.v * rv * z.v + z.v});
    const auto m = static_cast<Index>(cons_.size());
    std::vector<Pair> ha;
    ha.reserve(cons_.size());
    for (const auto& c : cons_) ha.push_back(apply_inverse(Pair{-c, c}));
    Eigen::MatrixXd schur(m, m);
    RVector rhs(m);
    for (Index k = 0; k < m; ++k) {
      const Pair ak{-cons_[static_cast<std::size_t>(k)], cons_[static_cast<std::size_t>(k)]};
      // Including the equality residual lets round-off drift decay along the
      // Newton direction instead of being corrected in a separate step.
      rhs[k] = inner(ak, hg) + inner(ak, z);
      for (Index l = 0; l < m; ++l) schur(k, l) = inner(ak, ha[static_cast<std::size_t>(l)]);
    }
    lambda = schur.ldlt().solve(rhs);
    step = hg;
    for (Index k = 0; k < m; ++k) {
      step.u -= lambda[k] * ha[static_cast<std::size_t>(k)].u;
      step.v -= lambda[k] * ha[static_cast<std::size_t>(k)].v;
    }
    step.u = 0.5 * (step.u + step.u.adjoint()).eval();
    step.v = 0.5 * (step.v + step.v.adjoint()).eval();
    // Predicted decrease -grad^T step; the U^-1 and V^-1 parts as traces of
    // Cholesky solves.
    return trace_inner(ru, step.u).real() + trace_inner(rv, step.v).real() + lu->solve(step.u).trace().real() +
           lv->solve(step.v).trace().real();
  }

 private:
  CMatrix g_;
  std::vector<CMatrix> cons_;  // orthonormal Hermitian basis of span_R{constraints}
  Index d_;
};

// Coefficients c_1..c_n on the original non-identity constraints with
// sum_j c_j C_j = sum_k y_k B_k up to an identity term (which the dual
// optimizes exactly), by least squares on the real-vectorized matrices.
RVector dual_start_from_multipliers(const SdpProblem& p, const std::vector<CMatrix>& basis, const RVector& y) {
  const Index n = static_cast<Index>(p.constraints.size()) - 1;
  if (n == 0 || y.size() != static_cast<Index>(basis.size())) return RVector::Zero(n);
  const Index d = p.dim();
  CMatrix target = CMatrix::Zero(d, d);
  for (std::size_t k = 0; k < basis.size(); ++k) target += y[static_cast<Index>(k)] * basis[k];
  const Index rows = 2 * d * d;
  Eigen::MatrixXd a(rows, n + 1);
  RVector b(rows);
  auto put = [&](Eigen::Ref<RVector> col, const CMatrix& m) {
    for (Index i = 0; i < d * d; ++i) {
      col[i] = m.data()[i].real();
      col[d * d + i] = m.data()[i].imag();
    }
  };
  for (Index j = 0; j <= n; ++j) put(a.col(j), p.constraints[static_cast<std::size_t>(j)].matrix());
  put(b, target);
  const RVector c = a.completeOrthogonalDecomposition().solve(b);
  return c.tail(n);
}

}  // namespace

namespace {

// Runs the independent dual solver and fills the bound, gap and verdict.
void certify(const SdpProblem& p, const PrimalOptions& opts, const std::optional<RVector>& start,
             SdpSolution& sol) {
  DualOptions dopts;
  dopts.tol = std::min(opts.tol, 1e-8);
  dopts.start = start;
  const DualResult dual = solve_dual(p, dopts);
  sol.dual_value = dual.value;
  sol.dual_coeffs = dual.coeffs;
  sol.dual_iterations = dual.iterations;
  sol.gap = sol.dual_value - sol.primal_value;
  sol.certified = dual.certified && sol.gap < opts.certify_gap && sol.gap > -opts.certify_gap;
}

}  // namespace

SdpSolution solve_primal(const SdpProblem& p, const PrimalOptions& opts, const Tolerances& tol) {
  p.validate();
  const Index d = p.dim();
  const OperatorSpan constraint_span = orthonormal_span(p.constraints, Field::Real, tol);
  const Barrier barrier(p, constraint_span.basis());

  // Strictly feasible start: half of the constructive optimizer, X slightly
  // above its absolute value.
  const ConstructiveBound cb = constructive_bound(p, tol);
  if (!cb.rho0 || !cb.rho1) {
    // G lies in the constraint span, so tr(G G~) vanishes on the whole
    // feasible set; G~ = X = 0 is optimal and the dual still certifies it.
    SdpSolution sol;
    sol.g_tilde = HermitianOperator::zero(d);
    sol.x_certificate = HermitianOperator::zero(d);
    certify(p, opts, std::nullopt, sol);
    return sol;
  }
  CMatrix gt0 = CMatrix::Zero(d, d);
  CMatrix x0 = CMatrix::Zero(d, d);
  if (cb.rho0 && cb.rho1) {
    gt0 = 0.5 * (cb.rho1->matrix() - cb.rho0->matrix());
    x0 = 0.5 * (cb.rho1->matrix() + cb.rho0->matrix());
  }
  x0 += (0.5 / static_cast<double>(d)) * CMatrix::Identity(d, d);
  Pair z{x0 - gt0, x0 + gt0};

  const double nu = 2.0 * static_cast<double>(d) + 1.0;
  double mu = opts.mu_start;
  int newton_steps = 0;
  Pair step;
  RVector lambda;
  double t_last = 1.0;

  while (true) {
    const double t = 1.0 / mu;
    for (int inner_it = 0; inner_it < opts.max_newton_per_stage; ++inner_it) {
      const double decrement2 = barrier.newton_step(z, t, step, lambda);
      t_last = t;
      ++newton_steps;
      if (!std::isfinite(decrement2)) throw NumericalError("solve_primal: non-finite Newton decrement");
      if (decrement2 < 1e-14) break;

      // Inside the quadratic-convergence region of a self-concordant barrier
      // (Newton decrement below 1/2) the full step stays feasible; value
      // comparisons are useless there once t |objective| swamps the decrease.
      if (decrement2 < 0.25) {
        const Pair trial{z.u + step.u, z.v + step.v};
        if (barrier.value(trial, t)) {
          z = trial;
          continue;
        }
      }
      const auto f0 = barrier.value(z, t);
      if (!f0) throw NumericalError("solve_primal: iterate left the feasible region");
      double alpha = 1.0;
      bool accepted = false;
      for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
        const Pair trial{z.u + alpha * step.u, z.v + alpha * step.v};
        const auto f1 = barrier.value(trial, t);
        if (f1 && *f1 <= *f0 - 0.25 * alpha * decrement2) {
          z = trial;
          accepted = true;
          break;
        }
      }
      if (!accepted) {
        // No measurable decrease at any step size: the iterate is as central
        // as double precision allows.
        if (decrement2 < 1e-8) break;
        throw NumericalError("solve_primal: line search failed (Newton decrement " + std::to_string(decrement2) + ")");
      }
    }
    if (nu * mu < opts.tol) break;
    mu /= opts.mu_factor;
  }

  // Stationarity gives G - (2/t) sum_k lambda_k B_k = (2/t)(U^-1 - 1/(2s)),
  // so the scaled multipliers are near-optimal dual coefficients; they seed the
  // independent dual solver, which re-evaluates the bound itself.
  const RVector dual_start = dual_start_from_multipliers(p, constraint_span.basis(), (2.0 / t_last) * lambda);

  // Boundary polish. The barrier stops a duality measure short of the optimal
  // face, mostly as unused trace budget. Projecting G~ exactly onto the
  // equality constraints and taking the smallest admissible X = |G~|, scaled
  // to tr X = 2, gives an exactly feasible point that recovers that slack.
  CMatrix gt = 0.5 * (z.v - z.u);
  for (const auto& c : constraint_span.basis()) gt -= trace_inner(c, gt).real() * c;
  gt = 0.5 * (gt + gt.adjoint()).eval();
  const Eigen::SelfAdjointEigenSolver<CMatrix> es(gt);
  const double abs_trace = es.eigenvalues().cwiseAbs().sum();
  SdpSolution sol;
  const bool trivial = constraint_span.basis().size() == static_cast<std::size_t>(d * d) || abs_trace < 1e-10;
  if (!trivial) {
    const double scale = 2.0 / abs_trace;
    sol.g_tilde = HermitianOperator::hermitian_part(scale * gt);
    sol.x_certificate = HermitianOperator::hermitian_part(
        scale * (es.eigenvectors() * es.eigenvalues().cwiseAbs().asDiagonal() * es.eigenvectors().adjoint()));
  } else {
    // The constraints pin G~ = 0.
    sol.g_tilde = HermitianOperator::zero(d);
    sol.x_certificate = HermitianOperator::hermitian_part(0.5 * (z.u + z.v));
  }
  sol.primal_value = trace_inner(p.g.matrix(), sol.g_tilde.matrix()).real();
  sol.iterations = newton_steps;
  sol.duality_measure = nu * mu;
  certify(p, opts, dual_start, sol);
  return sol;
}

}  // namespace dressmet
