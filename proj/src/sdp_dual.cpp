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

// Upper bound for the code-design SDP from its Lagrange dual
//
//   2 * min_c || G - sum_k c_k C_k ||_op ,
//
// a convex nonsmooth problem in at most a handful of real variables. This file
// intentionally shares nothing with the interior-point primal solver.

#include <algorithm>
#include <cmath>
#include <limits>

#include "dressmet/errors.hpp"
#include "dressmet/sdp.hpp"

namespace dressmet {

namespace {

struct Evaluation {
  double value;     // (lambda_max - lambda_min) / 2 after the optimal identity shift
  double shift;     // optimal identity coefficient
  RVector subgrad;  // with respect to the non-identity coefficients
};

// The identity coefficient is minimized exactly: for M = G - sum_{k>0} c_k C_k,
// min_{c0} ||M - c0 1||_op = (lambda_max(M) - lambda_min(M)) / 2.
Evaluation evaluate(const SdpProblem& p, const RVector& c) {
  CMatrix m = p.g.matrix();
  for (std::size_t k = 1; k < p.constraints.size(); ++k) {
    m -= c[static_cast<Index>(k - 1)] * p.constraints[k].matrix();
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  const Index d = m.rows();
  const double lmin = es.eigenvalues()[0];
  const double lmax = es.eigenvalues()[d - 1];
  const CVector vmin = es.eigenvectors().col(0);
  const CVector vmax = es.eigenvectors().col(d - 1);

  Evaluation ev;
  ev.value = 0.5 * (lmax - lmin);
  ev.shift = 0.5 * (lmax + lmin);
  ev.subgrad.resize(static_cast<Index>(p.constraints.size()) - 1);
  for (std::size_t k = 1; k < p.constraints.size(); ++k) {
    const CMatrix& ck = p.constraints[k].matrix();
    const double top = vmax.dot(ck * vmax).real();
    const double bottom = vmin.dot(ck * vmin).real();
    ev.subgrad[static_cast<Index>(k - 1)] = -0.5 * (top - bottom);
  }
  return ev;
}

// Least-squares coefficients of G on the non-identity constraints after
// removing traces; a cheap starting point that is exact when G lies in the span.
RVector least_squares_start(const SdpProblem& p) {
  const Index n = static_cast<Index>(p.constraints.size()) - 1;
  if (n == 0) return RVector(0);
  const Index d = p.dim();
  auto traceless = [d](const CMatrix& m) {
    return CMatrix(m - (m.trace() / static_cast<double>(d)) * CMatrix::Identity(d, d));
  };
  std::vector<CMatrix> cs;
  for (std::size_t k = 1; k < p.constraints.size(); ++k) cs.push_back(traceless(p.constraints[k].matrix()));
  const CMatrix g = traceless(p.g.matrix());
  Eigen::MatrixXd gram(n, n);
  RVector rhs(n);
  for (Index a = 0; a < n; ++a) {
    rhs[a] = trace_inner(cs[static_cast<std::size_t>(a)], g).real();
    for (Index b = 0; b < n; ++b) {
      gram(a, b) = trace_inner(cs[static_cast<std::size_t>(a)], cs[static_cast<std::size_t>(b)]).real();
    }
  }
  return gram.completeOrthogonalDecomposition().solve(rhs);
}

}  // namespace

DualResult solve_dual(const SdpProblem& p, const DualOptions& opts) {
  p.validate();
  const Index n = static_cast<Index>(p.constraints.size()) - 1;

  RVector c = least_squares_start(p);
  Evaluation ev = evaluate(p, c);
  if (opts.start) {
    if (opts.start->size() != n) throw DimensionError("solve_dual: start has the wrong number of coefficients");
    const Evaluation warm = evaluate(p, *opts.start);
    if (warm.value < ev.value) {
      c = *opts.start;
      ev = warm;
    }
  }
  RVector best_c = c;
  Evaluation best = ev;

  // Polyak steps toward a target level f_best - delta. The level gap delta
  // shrinks whenever a run of steps fails to make sufficient progress, and the
  // iterate restarts from the best point found so far.
  const double scale = std::max(1.0, std::abs(best.value));
  double delta = std::max(0.25 * best.value, opts.tol);
  double record_at_reset = best.value;
  int since_progress = 0;
  std::vector<double> history;
  history.reserve(static_cast<std::size_t>(opts.max_iterations) + 1);
  history.push_back(best.value);

  DualResult out;
  int it = 0;
  bool converged = n == 0;
  for (; it < opts.max_iterations && !converged; ++it) {
    const double gnorm2 = ev.subgrad.squaredNorm();
    if (gnorm2 == 0.0) {  // zero subgradient: current point is optimal
      converged = true;
      break;
    }
    const double target = best.value - delta;
    c -= ((ev.value - target) / gnorm2) * ev.subgrad;
    ev = evaluate(p, c);
    if (ev.value < best.value) {
      best = ev;
      best_c = c;
    }
    if (best.value <= record_at_reset - 0.5 * delta) {
      record_at_reset = best.value;
      since_progress = 0;
    } else if (++since_progress > 2 * (n + 5)) {
      delta *= 0.5;
      c = best_c;
      ev = best;
      record_at_reset = best.value;
      since_progress = 0;
    }
    history.push_back(best.value);
    const auto h = history.size();
    if (h > static_cast<std::size_t>(opts.window) && delta < opts.tol * scale) {
      const double improvement = history[h - 1 - static_cast<std::size_t>(opts.window)] - history[h - 1];
      if (improvement < opts.tol * scale) converged = true;
    }
  }

  out.coeffs.resize(n + 1);
  out.coeffs[0] = best.shift;
  for (Index k = 0; k < n; ++k) out.coeffs[k + 1] = best_c[k];
  out.value = 2.0 * best.value;
  out.iterations = it;
  out.certified = converged;
  return out;
}

}  // namespace dressmet
