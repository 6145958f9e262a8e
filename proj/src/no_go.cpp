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

// Search over orthonormal pairs (V^dag V = 1, V of size d x 2) minimizing
//
//   f(V) = sum_a || V^dag A_a V - tr(V^dag A_a V)/2 1 ||_F^2 ,
//
// which vanishes exactly when every compression is proportional to the
// identity on span(V). For Hermitian A the Frobenius form equals
// sum_a |<0|A|0> - <1|A|1>|^2 / 2 + 2 |<0|A|1>|^2 and is invariant under
// unitary changes of basis inside span(V).

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "dressmet/codespace.hpp"
#include "dressmet/errors.hpp"
#include "dressmet/rng.hpp"

namespace dressmet {

namespace {

double real_inner(const CMatrix& a, const CMatrix& b) { return trace_inner(a, b).real(); }

CMatrix traceless_compression(const CMatrix& v, const CMatrix& a) {
  CMatrix m = v.adjoint() * a * v;
  m.diagonal().array() -= 0.5 * m.trace();
  return m;
}

// Euclidean gradient for the real inner product Re tr(X^dag dV):
// sum_a 2 (A V T^dag + A^dag V T).
CMatrix penalty_gradient(const CMatrix& v, const std::vector<CMatrix>& ops) {
  CMatrix g = CMatrix::Zero(v.rows(), v.cols());
  for (const auto& a : ops) {
    const CMatrix t = traceless_compression(v, a);
    g += 2.0 * (a * v * t.adjoint() + a.adjoint() * v * t);
  }
  return g;
}

// Thin QR with a positive diagonal in R, so the retraction is continuous.
CMatrix retract(const CMatrix& x) {
  Eigen::HouseholderQR<CMatrix> qr(x);
  CMatrix q = qr.householderQ() * CMatrix::Identity(x.rows(), x.cols());
  const CMatrix r = qr.matrixQR().topRows(x.cols()).triangularView<Eigen::Upper>();
  for (Index k = 0; k < x.cols(); ++k) {
    const Complex rk = r(k, k);
    if (std::abs(rk) > 0.0) q.col(k) *= rk / std::abs(rk);
  }
  return q;
}

CMatrix random_isometry(Index d, CounterRng& rng) {
  CMatrix x(d, 2);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < 2; ++j) x(i, j) = Complex(rng.normal(), rng.normal());
  }
  return retract(x);
}

}  // namespace

double compression_penalty(const CMatrix& v, const std::vector<CMatrix>& ops) {
  double f = 0.0;
  for (const auto& a : ops) {
    if (a.rows() != v.rows() || a.cols() != v.rows()) throw DimensionError("compression_penalty: dimension mismatch");
    f += traceless_compression(v, a).squaredNorm();
  }
  return f;
}

StiefelResult minimize_compression_penalty(const std::vector<CMatrix>& ops, const CMatrix& v0,
                                           const StiefelOptions& opts) {
  if (v0.cols() != 2) throw DimensionError("minimize_compression_penalty: start must have two columns");
  StiefelResult res;
  res.v = retract(v0);
  res.penalty = compression_penalty(res.v, ops);

  CMatrix prev_v;
  CMatrix prev_xi;
  double step = 1.0;
  for (; res.iterations < opts.max_iterations; ++res.iterations) {
    if (res.penalty <= opts.penalty_floor) break;
    const CMatrix g = penalty_gradient(res.v, ops);
    CMatrix sym = res.v.adjoint() * g;
    sym = 0.5 * (sym + sym.adjoint()).eval();
    const CMatrix xi = g - res.v * sym;  // Riemannian gradient
    const double xi2 = xi.squaredNorm();
    if (std::sqrt(xi2) < opts.gradient_tol) break;

    if (prev_xi.size() != 0) {
      const CMatrix s = res.v - prev_v;
      const CMatrix y = xi - prev_xi;
      const double sy = std::abs(real_inner(s, y));
      if (sy > 0.0) step = std::clamp(s.squaredNorm() / sy, 1e-8, 1e4);
    }
    bool accepted = false;
    for (int ls = 0; ls < 50; ++ls, step *= 0.5) {
      const CMatrix trial = retract(res.v - step * xi);
      const double f = compression_penalty(trial, ops);
      if (f <= res.penalty - 1e-4 * step * xi2) {
        prev_v = res.v;
        prev_xi = xi;
        res.v = trial;
        res.penalty = f;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  return res;
}

NoGoResult no_go_search(const std::vector<HermitianOperator>& couplings, Index sys_dim, int restarts,
                        std::uint64_t seed, int jobs, const StiefelOptions& opts) {
  if (restarts < 1) throw DomainError("no_go_search: restarts must be at least 1");
  if (sys_dim < 2) throw DimensionError("no_go_search: need at least two dimensions");
  std::vector<CMatrix> ops;
  for (const auto& a : couplings) {
    if (a.dim() != sys_dim) throw DimensionError("no_go_search: coupling dimension differs from sys_dim");
    ops.push_back(a.matrix());
  }

  std::vector<StiefelResult> results(static_cast<std::size_t>(restarts));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int k = next++; k < restarts; k = next++) {
      CounterRng rng(seed, static_cast<std::uint64_t>(k));
      results[static_cast<std::size_t>(k)] = minimize_compression_penalty(ops, random_isometry(sys_dim, rng), opts);
    }
  };
  const int n_threads = std::clamp(jobs, 1, restarts);
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  NoGoResult out;
  out.restarts = restarts;
  out.min_penalty = std::numeric_limits<double>::infinity();
  for (const auto& r : results) {
    if (r.penalty < out.min_penalty) {
      out.min_penalty = r.penalty;
      out.best = r.v;
    }
    if (r.penalty < 1e-10) ++out.below_1e10;
  }
  return out;
}

CodeSpace refine_code(const CodeSpace& code, const std::vector<CMatrix>& ops, const StiefelOptions& opts) {
  std::vector<CMatrix> lifted;
  for (const auto& a : ops) lifted.push_back(code.lift_system(a));
  const StiefelResult r = minimize_compression_penalty(lifted, code.isometry(), opts);
  return CodeSpace(StateVector::normalized(r.v.col(0)), StateVector::normalized(r.v.col(1)), code.sys_dim(),
                   code.anc_dim());
}

}  // namespace dressmet
