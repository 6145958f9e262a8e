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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "dressmet/errors.hpp"
#include "dressmet/nv.hpp"
#include "dressmet/simulate.hpp"
#include "fixtures.hpp"

using namespace dressmet;
using namespace fixtures;

namespace {

constexpr double kPi = std::numbers::pi;

CMatrix plus_state() { return CMatrix::Constant(2, 2, 0.5); }

CodeSpace qubit_code() { return CodeSpace(StateVector::basis(2, 0), StateVector::basis(2, 1), 2); }

ProbeModel dephased_qubit(double gamma) {
  ProbeModel m;
  m.h = HermitianOperator::zero(2);
  m.g = H(0.5 * pauli_z());
  m.couplings = {H(pauli_z())};
  m.spectrum = peak0_spectrum(NoiseRegime::DephasingOnly, gamma);
  m.psi0 = ket(2, 0);
  m.psi1 = ket(2, 1);
  return m;
}

}  // namespace

TEST(Evolve, RabiRotation) {
  const LindbladGenerator gen(H(0.5 * pauli_z()));
  SimConfig cfg;
  cfg.t_final = kPi;
  cfg.dt = 1e-3;
  cfg.record_stride = 1000000;
  const Trajectory tr = evolve(plus_state(), gen, cfg);
  const CMatrix expect = 0.5 * (CMatrix::Identity(2, 2) - pauli_x());  // |-><-|
  EXPECT_LT((tr.states.back() - expect).norm(), 1e-8);
  EXPECT_DOUBLE_EQ(tr.times.back(), kPi);
  EXPECT_DOUBLE_EQ(tr.times.front(), 0.0);
}

TEST(Evolve, DephasingMatchesClosedForm) {
  const ProbeModel m = dephased_qubit(1.0);
  SimConfig cfg;
  cfg.t_final = 1.5;
  cfg.dt = 1e-3;
  cfg.record_stride = 500;
  const Trajectory tr = evolve(m.input_state(), m.generator(), cfg);
  ASSERT_EQ(tr.times.size(), 4u);
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    EXPECT_NEAR(m.coherence(tr.states[k]), 0.5 * std::exp(-2.0 * tr.times[k]), 1e-10);
  }
  EXPECT_LT(tr.max_trace_drift, 1e-12);
  EXPECT_GT(tr.min_eigenvalue, -1e-12);
}

TEST(Evolve, ConfigValidation) {
  const LindbladGenerator gen(H(pauli_z()));
  SimConfig cfg;
  cfg.t_final = -1.0;
  EXPECT_THROW(evolve(plus_state(), gen, cfg), DomainError);
  cfg.t_final = 1.0;
  cfg.record_stride = 0;
  EXPECT_THROW(evolve(plus_state(), gen, cfg), DomainError);
  cfg.record_stride = 1;
  cfg.dt = 0.5;  // dt ||L|| far above 0.1
  EXPECT_THROW(evolve(plus_state(), gen, cfg), DomainError);
}

TEST(Evolve, Rk4IsFourthOrder) {
  CounterRng rng(12, 0);
  const HermitianOperator h = H(random_hermitian(rng, 3));
  const LindbladSet ls = jump_operators(h, spin1_couplings());
  const LindbladGenerator gen(h, ls, flat_spectrum(NoiseRegime::FullThermal, 0.2, 1.0));
  const CMatrix rho0 = random_density(rng, 3);
  auto run = [&](double dt) {
    SimConfig cfg;
    cfg.t_final = 1.0;
    cfg.dt = dt;
    cfg.record_stride = 1 << 30;
    return evolve(rho0, gen, cfg).states.back();
  };
  const CMatrix ref = run(1e-4);
  // The random generator has norm bound ~6.4, so dt must stay below ~0.015.
  const double e1 = (run(0.01) - ref).norm();
  const double e2 = (run(0.005) - ref).norm();
  EXPECT_GT(std::log2(e1 / e2), 3.8);
}

TEST(Qfi, AnalyticExamples) {
  // 4 t^2 var convention: var = 1/4 on the NV code gives t^2.
  EXPECT_NEAR(qfi_analytic(nv_ancilla_code(), H(sz1() * sz1()), 4.0), 16.0, 1e-12);
  EXPECT_EQ(qfi_analytic(nv_ancilla_code(), H(sz1() * sz1()), 0.0), 0.0);
  EXPECT_NEAR(qfi_analytic(qubit_code(), H(0.5 * pauli_z()), 3.0), 9.0, 1e-12);
}

TEST(Qfi, Crlb) {
  EXPECT_DOUBLE_EQ(crlb(4.0), 0.25);
  EXPECT_DOUBLE_EQ(crlb(4.0, 100), 2.5e-3);
  EXPECT_EQ(crlb(0.0), std::numeric_limits<double>::infinity());
  EXPECT_THROW(crlb(-1.0), DomainError);
  EXPECT_THROW(crlb(1.0, 0), DomainError);
  EXPECT_NEAR(crlb(qfi_analytic(nv_ancilla_code(), H(sz1() * sz1()), 2.0)), 0.25, 1e-12);
}

TEST(Qfi, FidelityAndSld) {
  EXPECT_NEAR(fidelity(plus_state(), plus_state()), 1.0, 1e-12);
  EXPECT_NEAR(fidelity(diag({1, 0}), diag({0, 1})), 0.0, 1e-12);
  EXPECT_NEAR(fidelity(diag({0.5, 0.5}), plus_state()), 0.5, 1e-12);
  // Pure state: SLD QFI = 4 (<d psi|d psi> - |<psi|d psi>|^2); for e^{-i t G}
  // it is 4 t^2 var(G). Here drho = -i t [G, rho] with t = 1 and var = 1/4.
  const CMatrix g = 0.5 * pauli_z();
  const CMatrix drho = Complex(0, -1) * commutator(g, plus_state());
  EXPECT_NEAR(sld_qfi(plus_state(), drho), 1.0, 1e-12);
}

TEST(Qfi, NumericMatchesAnalyticNoiseless) {
  const ProbeModel m = dephased_qubit(0.0);
  const NumericQfi q = qfi_numeric(m.generator(), m.g, m.input_state(), 3.0, 0.0, 1e-3);
  EXPECT_TRUE(q.reliable);
  EXPECT_NEAR(q.value / qfi_analytic(qubit_code(), m.g, 3.0), 1.0, 1e-4);
}

TEST(Qfi, NumericMatchesAnalyticProtectedNv) {
  const ProbeModel m = nv_protected_model(flat_spectrum(NoiseRegime::DephasingOnly, 1.0));
  const NumericQfi q = qfi_numeric(m.generator(), m.g, m.input_state(), 2.0, 0.0, 1e-3);
  EXPECT_TRUE(q.reliable);
  EXPECT_NEAR(q.value / qfi_analytic(nv_bare_code(), m.g, 2.0), 1.0, 1e-4);
}

TEST(Qfi, TrajectoryMatchesDephasedClosedForm) {
  // For e^{-2 gamma t} coherence decay: QFI = t^2 e^{-4 gamma t} (var = 1/4).
  const double gamma = 0.5;
  const ProbeModel m = dephased_qubit(gamma);
  const std::vector<double> times{0.5, 1.0, 2.0};
  const QfiTrajectory q = qfi_trajectory(m.generator(), m.g, m.input_state(), times, 1e-3);
  ASSERT_EQ(q.qfi.size(), times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double t = times[k];
    EXPECT_NEAR(q.qfi[k], t * t * std::exp(-4.0 * gamma * t), 1e-8) << "t=" << t;
  }
}

TEST(Sweep, NoiselessSlopeTwo) {
  const ProbeModel m = dephased_qubit(0.0);
  const std::vector<double> grid = make_grid(1.0, 8.0, 5, true);
  const auto rec = scaling_sweep(m, m, grid, 1, 1e-3);
  std::vector<double> qp, qu;
  for (const auto& r : rec) qp.push_back(r.qfi_protected), qu.push_back(r.qfi_unprotected);
  EXPECT_NEAR(loglog_slope(grid, qp), 2.0, 1e-6);
  EXPECT_NEAR(loglog_slope(grid, qu), 2.0, 1e-6);
  EXPECT_NEAR(rec.back().crlb, 1.0 / rec.back().qfi_protected, 1e-15);
}

TEST(Sweep, DephasedQfiDecays) {
  const ProbeModel noisy = dephased_qubit(1.0);
  const ProbeModel clean = dephased_qubit(0.0);
  const std::vector<double> grid = make_grid(2.0, 20.0, 6, true);
  const auto rec = scaling_sweep(clean, noisy, grid, 2, 2e-3);
  std::vector<double> qu;
  for (const auto& r : rec) qu.push_back(r.qfi_unprotected);
  EXPECT_LE(loglog_slope(grid, qu), 0.0);
}

TEST(Sweep, GridAndSlopeHelpers) {
  const auto lin = make_grid(1.0, 3.0, 3, false);
  EXPECT_EQ(lin, (std::vector<double>{1.0, 2.0, 3.0}));
  const auto lg = make_grid(1.0, 100.0, 3, true);
  EXPECT_NEAR(lg[1], 10.0, 1e-12);
  EXPECT_NEAR(loglog_slope({1, 2, 4}, {3, 24, 192}), 3.0, 1e-12);
}

TEST(Leakage, CommutingGeneratorNoCorrection) {
  const LeakageReport r = perturbation_leakage(H(diag({0, 1, 3})), H(diag({1, -1, 2})), 1e-3);
  for (double c : r.corrections) EXPECT_EQ(c, 0.0);
  EXPECT_EQ(r.max_ratio, 0.0);
}

TEST(Leakage, QubitRotation) {
  const double dw = 1e-3;
  const LeakageReport r = perturbation_leakage(H(diag({0, 1})), H(pauli_x()), dw);
  ASSERT_EQ(r.corrections.size(), 2u);
  EXPECT_NEAR(r.corrections[0], dw, 1e-12);
  // Exact mixing angle: tan(2 theta) = 2 dw, so sin(theta) ~ dw - O(dw^3).
  const double theta = 0.5 * std::atan(2.0 * dw);
  EXPECT_NEAR(r.corrections[0], std::sin(theta), 1e-6);
  EXPECT_NEAR(r.max_ratio, dw, 1e-15);
  EXPECT_NEAR(r.order, 2.0, 0.1);
}

TEST(Leakage, DegenerateRejected) {
  EXPECT_THROW(perturbation_leakage(H(sz1() * sz1()), H(sx1()), 1e-3), DomainError);
}

TEST(Leakage, DressedNv) {
  const LeakageReport r = perturbation_leakage(nv_dressed_hamiltonian(), H(sz1() * sz1()), 1e-4);
  EXPECT_TRUE(std::isfinite(r.max_ratio));
  EXPECT_LT(r.max_ratio, 1e-2);
}
