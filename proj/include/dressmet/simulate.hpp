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

// Master-equation integration, quantum Fisher information and scaling sweeps.

#include <optional>
#include <vector>

#include "dressmet/codespace.hpp"
#include "dressmet/lindblad.hpp"

namespace dressmet {

struct SimConfig {
  double t_final = 1.0;
  double dt = 0.0;            // 0: default_dt of the generator
  double delta_omega = 0.0;   // signal offset added as delta_omega * G
  int record_stride = 1;

  /// Throws DomainError on non-positive times or stride.
  void validate() const;
};

/// 1e-3 / max(||H||_op, total rate), with a floor on the denominator of 1e-12.
double default_dt(const LindbladGenerator& gen);

struct Trajectory {
  std::vector<double> times;
  std::vector<CMatrix> states;
  int steps = 0;
  double max_trace_drift = 0.0;                // max |tr rho - 1| over all steps
  double min_eigenvalue = 1.0;                 // over recorded states
  double max_hermitian_deviation = 0.0;        // of rho before symmetrization, over all steps
};

/// Classical RK4 with a step dt' <= dt chosen so t_final is hit exactly.
/// Throws DomainError if dt * ||L|| >= 0.1 and NumericalError if the trace
/// drifts by more than 1e-6 or a recorded state has an eigenvalue below -1e-6.
Trajectory evolve(const CMatrix& rho0, const LindbladGenerator& gen, const SimConfig& cfg);
Trajectory evolve(const CMatrix& rho0, const HermitianOperator& h_s, const LindbladSet& lset,
                  const BathSpectrum& spectrum, const SimConfig& cfg);

/// One RK4 step.
CMatrix rk4_step(const LindbladGenerator& gen, const CMatrix& rho, double h);

// ---------------------------------------------------------------------------
// Quantum Fisher information

/// 4 t^2 var with var from effective_generator: the QFI of the pure code
/// superposition evolving under G_eff.
double qfi_analytic(const CodeSpace& code, const HermitianOperator& g, double t);

/// 1 / (k qfi); +infinity when qfi == 0. Throws DomainError for qfi < 0 or k < 1.
double crlb(double qfi, int k = 1);

/// Uhlmann fidelity (tr sqrt(sqrt(a) b sqrt(a)))^2. Eigenvalues below
/// `cutoff` times the largest are clamped to zero.
double fidelity(const CMatrix& a, const CMatrix& b, double cutoff = 1e-12);

/// SLD quantum Fisher information 2 sum |<i|drho|j>|^2 / (p_i + p_j) over
/// pairs with p_i + p_j above `cutoff`.
double sld_qfi(const CMatrix& rho, const CMatrix& drho, double cutoff = 1e-12);

struct NumericQfi {
  double value = 0.0;   // Richardson extrapolation of the two estimates
  double coarse = 0.0;  // 4 (1 - F(rho(+d), rho(-d))) / (2d)^2
  double fine = 0.0;    // same with d/2
  bool reliable = true; // coarse and fine agree within 5%
};

/// Finite-difference QFI from states evolved at omega0 +- delta. delta = 0
/// selects 1e-3 / ||G||_op.
NumericQfi qfi_numeric(const LindbladGenerator& gen, const HermitianOperator& g, const CMatrix& rho0, double t,
                       double delta = 0.0, double dt = 0.0);

/// QFI along a trajectory from the sensitivity equation
///   d(rho')/dt = L(rho') - i [G, rho],
/// recorded at ascending `times` (integration lands on each exactly).
struct QfiTrajectory {
  std::vector<double> times;
  std::vector<double> qfi;
  std::vector<CMatrix> states;
};

QfiTrajectory qfi_trajectory(const LindbladGenerator& gen, const HermitianOperator& g, const CMatrix& rho0,
                             const std::vector<double>& times, double dt = 0.0);

// ---------------------------------------------------------------------------
// Scaling sweeps

/// A probe: Hamiltonian at delta_omega = 0, signal generator, noise model and
/// the code basis whose equal superposition is the input state.
struct ProbeModel {
  HermitianOperator h;
  HermitianOperator g;
  std::vector<HermitianOperator> couplings;
  BathSpectrum spectrum;
  CVector psi0;
  CVector psi1;
  std::optional<double> gap_tol;

  LindbladGenerator generator() const;
  /// (psi0 + psi1)/sqrt(2) as a density matrix.
  CMatrix input_state() const;
  /// |<psi0|rho|psi1>|.
  double coherence(const CMatrix& rho) const;
};

struct ScalingRecord {
  double t = 0.0;
  double qfi_protected = 0.0;
  double qfi_unprotected = 0.0;
  double coherence = 0.0;  // of the protected probe
  double crlb = 0.0;       // 1 / qfi_protected
};

std::vector<ScalingRecord> scaling_sweep(const ProbeModel& protected_model, const ProbeModel& unprotected_model,
                                         const std::vector<double>& tgrid, int jobs = 1, double dt = 0.0);

/// n points from a to b, geometric when `log` is set.
std::vector<double> make_grid(double a, double b, int n, bool log);

/// Least-squares slope of log y against log t. Non-positive y are floored at
/// 1e-300.
double loglog_slope(const std::vector<double>& t, const std::vector<double>& y);

// ---------------------------------------------------------------------------
// First-order perturbation diagnostic

struct LeakageReport {
  std::vector<double> corrections;  // delta_omega * || |psi_n^(1)> || per eigenvector
  double max_ratio = 0.0;           // max |delta_omega <m|G|n> / (mu_n - mu_m)|
  std::vector<double> deltas;       // delta_omega, delta_omega/2, delta_omega/4
  std::vector<double> errors;       // max_n || exact - first-order prediction ||
  double order = 0.0;               // fitted exponent of errors vs deltas (NaN if errors vanish)
};

/// Throws DomainError if h0 has a degenerate spectrum.
LeakageReport perturbation_leakage(const HermitianOperator& h0, const HermitianOperator& g, double delta_omega,
                                   std::optional<double> gap_tol = std::nullopt);

}  // namespace dressmet
