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

#include "dressmet/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <string>

#include "dressmet/errors.hpp"

namespace dressmet {

void SimConfig::validate() const {
  if (!(t_final > 0.0)) throw DomainError("SimConfig: t_final must be positive");
  if (dt < 0.0) throw DomainError("SimConfig: dt must be non-negative (0 selects the default)");
  if (dt > t_final) throw DomainError("SimConfig: dt exceeds t_final");
  if (record_stride < 1) throw DomainError("SimConfig: record_stride must be at least 1");
}

double default_dt(const LindbladGenerator& gen) {
  const double scale = std::max({operator_norm(gen.hamiltonian()), gen.total_rate(), 1e-12});
  return 1e-3 / scale;
}

CMatrix rk4_step(const LindbladGenerator& gen, const CMatrix& rho, double h) {
  const CMatrix k1 = gen.apply(rho);
  const CMatrix k2 = gen.apply(rho + (0.5 * h) * k1);
  const CMatrix k3 = gen.apply(rho + (0.5 * h) * k2);
  const CMatrix k4 = gen.apply(rho + h * k3);
  return rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

namespace {

double min_eigenvalue(const CMatrix& rho) {
  return Eigen::SelfAdjointEigenSolver<CMatrix>(rho, Eigen::EigenvaluesOnly).eigenvalues()[0];
}

void check_density(const CMatrix& rho, Index d, const char* who) {
  if (rho.rows() != d || rho.cols() != d) throw DimensionError(std::string(who) + ": state dimension mismatch");
  if (max_hermitian_deviation(rho) > 1e-10) throw DomainError(std::string(who) + ": initial state is not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > 1e-10) throw DomainError(std::string(who) + ": initial state trace != 1");
  if (min_eigenvalue(rho) < -1e-10) throw DomainError(std::string(who) + ": initial state is not positive");
}

void check_stability(const LindbladGenerator& gen, double h, const char* who) {
  const double bound = gen.norm_bound();
  if (h * bound >= 0.1) {
    throw DomainError(std::string(who) + ": step " + std::to_string(h) + " times generator norm bound " +
                      std::to_string(bound) + " is not below 0.1");
  }
}

// Number of equal steps of size at most dt covering an interval.
int steps_for(double interval, double dt) {
  return std::max(1, static_cast<int>(std::ceil(interval / dt - 1e-9)));
}

}  // namespace

Trajectory evolve(const CMatrix& rho0, const LindbladGenerator& gen, const SimConfig& cfg) {
  cfg.validate();
  check_density(rho0, gen.dim(), "evolve");
  const double dt = cfg.dt > 0.0 ? cfg.dt : std::min(default_dt(gen), cfg.t_final);
  const int n = steps_for(cfg.t_final, dt);
  const double h = cfg.t_final / n;
  check_stability(gen, h, "evolve");

  Trajectory tr;
  CMatrix rho = rho0;
  tr.times.push_back(0.0);
  tr.states.push_back(rho);
  tr.min_eigenvalue = min_eigenvalue(rho);
  for (int k = 1; k <= n; ++k) {
    rho = rk4_step(gen, rho, h);
    tr.max_hermitian_deviation = std::max(tr.max_hermitian_deviation, max_hermitian_deviation(rho));
    rho = 0.5 * (rho + rho.adjoint()).eval();
    const double drift = std::abs(rho.trace().real() - 1.0);
    tr.max_trace_drift = std::max(tr.max_trace_drift, drift);
    if (drift > 1e-6) {
      throw NumericalError("evolve: trace drifted by " + std::to_string(drift) + " at step " + std::to_string(k));
    }
    if (k % cfg.record_stride == 0 || k == n) {
      const double lmin = min_eigenvalue(rho);
      tr.min_eigenvalue = std::min(tr.min_eigenvalue, lmin);
      if (lmin < -1e-6) {
        throw NumericalError("evolve: positivity lost (eigenvalue " + std::to_string(lmin) + ") at t = " +
                             std::to_string(k * h));
      }
      tr.times.push_back(k == n ? cfg.t_final : k * h);
      tr.states.push_back(rho);
    }
  }
  tr.steps = n;
  return tr;
}

Trajectory evolve(const CMatrix& rho0, const HermitianOperator& h_s, const LindbladSet& lset,
                  const BathSpectrum& spectrum, const SimConfig& cfg) {
  const LindbladGenerator gen(h_s, lset, spectrum);
  if (cfg.delta_omega != 0.0) {
    throw DomainError("evolve: pass a generator with the signal term to evolve at delta_omega != 0");
  }
  return evolve(rho0, gen, cfg);
}

// ---------------------------------------------------------------------------

LindbladGenerator ProbeModel::generator() const {
  return LindbladGenerator(h, jump_operators(h, couplings, gap_tol), spectrum);
}

CMatrix ProbeModel::input_state() const {
  if (psi0.size() != h.dim() || psi1.size() != h.dim()) throw DimensionError("ProbeModel: probe dimension mismatch");
  const CVector in = (psi0 + psi1) / std::sqrt(2.0);
  if (std::abs(in.norm() - 1.0) > 1e-10) throw DomainError("ProbeModel: probe states must be orthonormal");
  return in * in.adjoint();
}

double ProbeModel::coherence(const CMatrix& rho) const { return std::abs(psi0.dot(rho * psi1)); }

std::vector<ScalingRecord> scaling_sweep(const ProbeModel& protected_model, const ProbeModel& unprotected_model,
                                         const std::vector<double>& tgrid, int jobs, double dt) {
  if (tgrid.empty()) throw DomainError("scaling_sweep: empty time grid");
  auto run = [&](const ProbeModel& m) {
    return qfi_trajectory(m.generator(), m.g, m.input_state(), tgrid, dt);
  };
  QfiTrajectory prot;
  QfiTrajectory unprot;
  if (jobs > 1) {
    auto f = std::async(std::launch::async, run, std::cref(unprotected_model));
    prot = run(protected_model);
    unprot = f.get();
  } else {
    prot = run(protected_model);
    unprot = run(unprotected_model);
  }
  std::vector<ScalingRecord> out(tgrid.size());
  for (std::size_t i = 0; i < tgrid.size(); ++i) {
    out[i].t = tgrid[i];
    out[i].qfi_protected = prot.qfi[i];
    out[i].qfi_unprotected = unprot.qfi[i];
    out[i].coherence = protected_model.coherence(prot.states[i]);
    out[i].crlb = crlb(prot.qfi[i]);
  }
  return out;
}

std::vector<double> make_grid(double a, double b, int n, bool log) {
  if (n < 1) throw DomainError("make_grid: need at least one point");
  if (!(b >= a)) throw DomainError("make_grid: end before start");
  if (log && !(a > 0.0)) throw DomainError("make_grid: logarithmic grid needs a positive start");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double f = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    out[static_cast<std::size_t>(i)] = log ? a * std::pow(b / a, f) : a + (b - a) * f;
  }
  out.back() = b;
  return out;
}

double loglog_slope(const std::vector<double>& t, const std::vector<double>& y) {
  if (t.size() != y.size() || t.size() < 2) throw DomainError("loglog_slope: need at least two matching points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(t[i] > 0.0)) throw DomainError("loglog_slope: times must be positive");
    const double x = std::log(t[i]);
    const double v = std::log(std::max(y[i], 1e-300));
    sx += x;
    sy += v;
    sxx += x * x;
    sxy += x * v;
  }
  const double den = n * sxx - sx * sx;
  if (den <= 0.0) throw DomainError("loglog_slope: times are all equal");
  return (n * sxy - sx * sy) / den;
}

// ---------------------------------------------------------------------------

LeakageReport perturbation_leakage(const HermitianOperator& h0, const HermitianOperator& g, double delta_omega,
                                   std::optional<double> gap_tol) {
  if (g.dim() != h0.dim()) throw DimensionError("perturbation_leakage: generator dimension differs from h0");
  if (!(delta_omega > 0.0)) throw DomainError("perturbation_leakage: delta_omega must be positive");
  const double tol = gap_tol.value_or(default_gap_tol(h0));
  const Eigensystem es = eigh(h0);
  const Index d = h0.dim();
  for (Index i = 1; i < d; ++i) {
    if (es.values[i] - es.values[i - 1] < tol) throw DomainError("perturbation_leakage: h0 has a degenerate spectrum");
  }
  const CMatrix gm = es.vectors.adjoint() * g.matrix() * es.vectors;  // <m|G|n>

  LeakageReport rep;
  CMatrix first = CMatrix::Zero(d, d);  // column n: |psi_n^(1)>
  for (Index n = 0; n < d; ++n) {
    for (Index m = 0; m < d; ++m) {
      if (m == n) continue;
      const Complex c = gm(m, n) / (es.values[n] - es.values[m]);
      first.col(n) += c * es.vectors.col(m);
      rep.max_ratio = std::max(rep.max_ratio, delta_omega * std::abs(c));
    }
    rep.corrections.push_back(delta_omega * first.col(n).norm());
  }

  for (double delta : {delta_omega, 0.5 * delta_omega, 0.25 * delta_omega}) {
    const Eigensystem ex = eigh(h0 + delta * g);
    double worst = 0.0;
    for (Index n = 0; n < d; ++n) {
      // Match by overlap and align the phase with the unperturbed vector.
      Index best = 0;
      double best_ov = -1.0;
      for (Index k = 0; k < d; ++k) {
        const double ov = std::abs(es.vectors.col(n).dot(ex.vectors.col(k)));
        if (ov > best_ov) {
          best_ov = ov;
          best = k;
        }
      }
      const Complex ph = es.vectors.col(n).dot(ex.vectors.col(best));
      const CVector exact = ex.vectors.col(best) * (std::conj(ph) / std::abs(ph));
      const CVector predicted = es.vectors.col(n) + delta * first.col(n);
      worst = std::max(worst, (exact - predicted).norm());
    }
    rep.deltas.push_back(delta);
    rep.errors.push_back(worst);
  }
  const bool resolvable = std::all_of(rep.errors.begin(), rep.errors.end(), [](double e) { return e > 1e-14; });
  rep.order = resolvable ? loglog_slope(rep.deltas, rep.errors) : std::numeric_limits<double>::quiet_NaN();
  return rep;
}

}  // namespace dressmet
