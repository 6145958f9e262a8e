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

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dressmet/errors.hpp"
#include "dressmet/simulate.hpp"

namespace dressmet {

double qfi_analytic(const CodeSpace& code, const HermitianOperator& g, double t) {
  return 4.0 * t * t * effective_generator(code, g).var;
}

double crlb(double qfi, int k) {
  if (k < 1) throw DomainError("crlb: k must be at least 1");
  if (qfi < 0.0) throw DomainError("crlb: negative Fisher information");
  if (qfi == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / (static_cast<double>(k) * qfi);
}

namespace {

struct Clamped {
  RVector p;
  CMatrix vecs;
};

Clamped clamped_eig(const CMatrix& rho, double cutoff) {
  const Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (rho + rho.adjoint()));
  Clamped c{es.eigenvalues(), es.eigenvectors()};
  const double floor = cutoff * std::max(0.0, c.p.maxCoeff());
  for (Index i = 0; i < c.p.size(); ++i) {
    if (c.p[i] < floor) c.p[i] = 0.0;
  }
  return c;
}

}  // namespace

double fidelity(const CMatrix& a, const CMatrix& b, double cutoff) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("fidelity: dimension mismatch");
  const Clamped ea = clamped_eig(a, cutoff);
  const CMatrix sqrt_a = ea.vecs * ea.p.cwiseSqrt().asDiagonal() * ea.vecs.adjoint();
  const CMatrix inner = sqrt_a * b * sqrt_a;
  const RVector lam = Eigen::SelfAdjointEigenSolver<CMatrix>(0.5 * (inner + inner.adjoint()), Eigen::EigenvaluesOnly)
                          .eigenvalues();
  // Round-off eigenvalues near 1e-16 would contribute 1e-8 after the square
  // root, which swamps 1 - F for nearby pure states.
  const double floor = cutoff * std::max(0.0, lam.maxCoeff());
  double s = 0.0;
  for (Index i = 0; i < lam.size(); ++i) {
    if (lam[i] > floor) s += std::sqrt(lam[i]);
  }
  return s * s;
}

double sld_qfi(const CMatrix& rho, const CMatrix& drho, double cutoff) {
  if (rho.rows() != drho.rows() || rho.cols() != drho.cols()) throw DimensionError("sld_qfi: dimension mismatch");
  const Clamped e = clamped_eig(rho, cutoff);
  const CMatrix d = e.vecs.adjoint() * drho * e.vecs;
  const double floor = cutoff * std::max(1.0, e.p.maxCoeff());
  double f = 0.0;
  for (Index i = 0; i < d.rows(); ++i) {
    for (Index j = 0; j < d.cols(); ++j) {
      const double s = e.p[i] + e.p[j];
      if (s > floor) f += 2.0 * std::norm(d(i, j)) / s;
    }
  }
  return f;
}

NumericQfi qfi_numeric(const LindbladGenerator& gen, const HermitianOperator& g, const CMatrix& rho0, double t,
                       double delta, double dt) {
  if (g.dim() != gen.dim()) throw DimensionError("qfi_numeric: generator dimension mismatch");
  if (!(t > 0.0)) throw DomainError("qfi_numeric: t must be positive");
  const double gnorm = operator_norm(g.matrix());
  if (gnorm == 0.0) return NumericQfi{};
  if (delta <= 0.0) delta = 1e-3 / gnorm;

  auto evolved = [&](double shift) {
    const LindbladGenerator shifted = gen.with_hamiltonian_shift(shift * g.matrix());
    SimConfig cfg;
    cfg.t_final = t;
    cfg.dt = dt > 0.0 ? std::min(dt, t) : std::min(default_dt(shifted), t);
    cfg.record_stride = std::numeric_limits<int>::max();
    return evolve(rho0, shifted, cfg).states.back();
  };
  auto estimate = [&](double d) {
    const double f = fidelity(evolved(d), evolved(-d));
    return 4.0 * (1.0 - f) / (4.0 * d * d);
  };

  NumericQfi out;
  out.coarse = estimate(delta);
  out.fine = estimate(0.5 * delta);
  out.value = (4.0 * out.fine - out.coarse) / 3.0;
  const double ref = std::max(std::abs(out.fine), 1e-300);
  out.reliable = std::abs(out.coarse - out.fine) <= 0.05 * ref;
  return out;
}

QfiTrajectory qfi_trajectory(const LindbladGenerator& gen, const HermitianOperator& g, const CMatrix& rho0,
                             const std::vector<double>& times, double dt) {
  if (g.dim() != gen.dim() || rho0.rows() != gen.dim()) throw DimensionError("qfi_trajectory: dimension mismatch");
  if (!std::is_sorted(times.begin(), times.end()) || (!times.empty() && times.front() < 0.0)) {
    throw DomainError("qfi_trajectory: times must be ascending and non-negative");
  }
  if (dt <= 0.0) dt = default_dt(gen);
  const double bound = gen.norm_bound();
  if (dt * bound >= 0.1) throw DomainError("qfi_trajectory: step too large for the generator norm");

  const Complex mi(0.0, -1.0);
  const CMatrix& gm = g.matrix();
  // Joint system y = (rho, sigma): rho' = L(rho), sigma' = L(sigma) - i [G, rho].
  auto rhs = [&](const CMatrix& rho, const CMatrix& sigma, CMatrix& drho, CMatrix& dsigma) {
    drho = gen.apply(rho);
    dsigma = gen.apply(sigma) + mi * (gm * rho - rho * gm);
  };

  QfiTrajectory out;
  CMatrix rho = rho0;
  CMatrix sigma = CMatrix::Zero(rho0.rows(), rho0.cols());
  double now = 0.0;
  CMatrix a1, b1, a2, b2, a3, b3, a4, b4;
  for (double target : times) {
    const double interval = target - now;
    if (interval > 0.0) {
      const int n = std::max(1, static_cast<int>(std::ceil(interval / dt - 1e-9)));
      const double h = interval / n;
      for (int k = 0; k < n; ++k) {
        rhs(rho, sigma, a1, b1);
        rhs(rho + 0.5 * h * a1, sigma + 0.5 * h * b1, a2, b2);
        rhs(rho + 0.5 * h * a2, sigma + 0.5 * h * b2, a3, b3);
        rhs(rho + h * a3, sigma + h * b3, a4, b4);
        rho += (h / 6.0) * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
        sigma += (h / 6.0) * (b1 + 2.0 * b2 + 2.0 * b3 + b4);
        rho = 0.5 * (rho + rho.adjoint()).eval();
        sigma = 0.5 * (sigma + sigma.adjoint()).eval();
      }
      if (std::abs(rho.trace().real() - 1.0) > 1e-6) throw NumericalError("qfi_trajectory: trace drift above 1e-6");
      now = target;
    }
    out.times.push_back(target);
    out.qfi.push_back(sld_qfi(rho, sigma));
    out.states.push_back(rho);
  }
  return out;
}

}  // namespace dressmet
