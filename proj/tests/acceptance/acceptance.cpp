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

// End-to-end acceptance suite. Prints one PASS/FAIL line per criterion with
// the measured quantities, and exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "dressmet/codespace.hpp"
#include "dressmet/criteria.hpp"
#include "dressmet/errors.hpp"
#include "dressmet/nv.hpp"
#include "dressmet/rng.hpp"
#include "dressmet/sdp.hpp"
#include "dressmet/simulate.hpp"

using namespace dressmet;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    notes.push_back(std::string(ok ? "  ok   " : "  FAIL ") + what);
  }
};

std::string fmt(const char* f, double a) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}
std::string fmt(const char* f, double a, double b) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}
std::string fmt(const char* f, double a, double b, double c) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

const SpinMatrices& spin1() {
  static const SpinMatrices s = spin_matrices(2);
  return s;
}
std::vector<HermitianOperator> spin_couplings() { return {spin1().x, spin1().y, spin1().z}; }
HermitianOperator sz_squared() { return HermitianOperator::hermitian_part(spin1().z.matrix() * spin1().z.matrix()); }

CMatrix random_hermitian(CounterRng& rng, Index d) {
  CMatrix a(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) a(i, j) = Complex(rng.normal(), rng.normal());
  }
  return 0.5 * (a + a.adjoint());
}

double slack(double v) { return 1e-10 * std::max(1.0, std::abs(v)); }

// ---------------------------------------------------------------------------

Outcome nv_dephasing_optimum() {
  Outcome o;
  const SdpProblem p = SdpProblem::from_couplings(sz_squared(), spin_couplings());
  const SdpSolution s = solve_primal(p);
  o.check(std::abs(s.primal_value - 1.0) < 5e-7, fmt("primal value %.9f (target 1.000000)", s.primal_value));
  o.check(s.gap < 1e-6 && s.certified, fmt("duality gap %.3e, dual value %.9f", s.gap, s.dual_value));
  o.check(std::abs(s.dual_coeffs[0] - 0.5) < 1e-6, fmt("dual witness c_I = %.9f", s.dual_coeffs[0]));

  // Optimizers are -|0><0| plus a state on span{|psi+>, |psi->}: the share
  // of G~ inside that block structure measures the overlap.
  CMatrix p0 = CMatrix::Zero(3, 3);
  p0(1, 1) = 1.0;
  const CMatrix p1 = CMatrix::Identity(3, 3) - p0;
  const CMatrix& gt = s.g_tilde.matrix();
  const CMatrix structured = p0 * gt * p0 + p1 * gt * p1;
  const double overlap = std::abs(trace_inner(structured, gt)) / gt.squaredNorm();
  o.check(overlap > 1.0 - 1e-6, fmt("block-structure overlap %.12f", overlap));
  o.check(std::abs(gt(1, 1).real() + 1.0) < 1e-6, fmt("<0|G~|0> = %.9f", gt(1, 1).real()));
  return o;
}

Outcome sandwich() {
  Outcome o;
  CounterRng rng(20240601, 0);
  double worst_gap = 0.0, worst_low = -1e300, worst_high = -1e300;
  int bad = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const Index d = 2 + static_cast<Index>(rng.next() % 5);
    const int n = static_cast<int>(rng.next() % 5);
    std::vector<HermitianOperator> cs;
    for (int k = 0; k < n; ++k) cs.push_back(HermitianOperator(random_hermitian(rng, d)));
    const SdpProblem p = SdpProblem::from_couplings(HermitianOperator(random_hermitian(rng, d)), cs);
    const ConstructiveBound cb = constructive_bound(p);
    const SdpSolution s = solve_primal(p);
    const bool ok = cb.value <= s.primal_value + slack(cb.value) &&
                    s.primal_value <= s.dual_value + slack(s.dual_value) && s.gap < 1e-6;
    if (!ok) ++bad;
    worst_gap = std::max(worst_gap, s.gap);
    worst_low = std::max(worst_low, cb.value - s.primal_value);
    worst_high = std::max(worst_high, s.primal_value - s.dual_value);
  }
  o.check(bad == 0, fmt("%.0f of 30 instances violate constructive <= primal <= dual", bad));
  o.check(worst_gap < 1e-6, fmt("worst gap %.3e", worst_gap));
  o.notes.push_back(fmt("  max(constructive - primal) %.3e, max(primal - dual) %.3e", worst_low, worst_high));
  return o;
}

Outcome verdict_table() {
  Outcome o;
  const VerdictTable t = nv_verdict_table(200, 0, 1);
  const bool expected[] = {true, false, true, false};
  o.check(t.cells.size() == 4, fmt("%.0f cells", static_cast<double>(t.cells.size())));
  for (std::size_t k = 0; k < t.cells.size() && k < 4; ++k) {
    const VerdictCell& c = t.cells[k];
    o.check(c.achievable == expected[k], c.regime + (c.ancilla ? " + ancilla: " : ": ") +
                                             (c.achievable ? "achievable" : "not achievable") + ", " + c.witness +
                                             fmt(" = %.3e", c.witness_value));
  }
  if (t.cells.size() == 4) {
    o.check(t.cells[0].witness_value < 1e-12, "dephasing code witness below 1e-12");
    o.check(t.cells[1].witness_value >= 2.0 - 1e-8,
            fmt("no-go floor %.12f >= pinned 2.0 (200 restarts)", t.cells[1].witness_value));
    o.check(t.cells[2].witness_value < 1e-12, "ancilla code witness below 1e-12");
    o.check(t.cells[3].witness_value < 1e-12, fmt("thm2 residual %.3e < 1e-12", t.cells[3].witness_value));
  }
  return o;
}

Outcome protected_dynamics() {
  Outcome o;
  const double gamma = 1.0;
  const ProbeModel m = nv_protected_model(flat_spectrum(NoiseRegime::DephasingOnly, gamma));
  const LindbladGenerator gen = m.generator();
  SimConfig cfg;
  cfg.t_final = 10.0 / gamma;
  cfg.dt = 1e-3;
  cfg.record_stride = 100;
  const Trajectory tr = evolve(m.input_state(), gen, cfg);
  double worst = 0.0;
  for (const auto& rho : tr.states) worst = std::max(worst, std::abs(m.coherence(rho) - 0.5));
  o.check(worst < 1e-8, fmt("max | |rho_01| - 0.5 | up to t = 10/gamma: %.3e", worst));

  const EffectiveGenerator eff = effective_generator(nv_bare_code(), m.g);
  for (double t : {1.0, 4.0, 10.0}) {
    const NumericQfi q = qfi_numeric(gen, m.g, m.input_state(), t, 0.0, 1e-3);
    const double target = t * t * eff.var;  // t^2 var(G_eff) = t^2 / 4
    const double rel = std::abs(q.value - target) / target;
    o.check(rel < 1e-3 && q.reliable, fmt("t = %.0f: qfi_numeric %.9f vs t^2/4 = %.9f", t, q.value, target));
    o.notes.push_back(fmt("         ratio to t^2/4 = %.6f; to 4 t^2 var = t^2: %.9f", q.value / target,
                          q.value / (4.0 * target)));
  }
  return o;
}

Outcome unprotected_baseline() {
  Outcome o;
  const BathSpectrum sp = flat_spectrum(NoiseRegime::DephasingOnly, 1.0);
  const ProbeModel un = nv_unprotected_model(sp);
  const ProbeModel prot = nv_protected_model(sp);

  SimConfig cfg;
  cfg.t_final = 5.0;
  cfg.dt = 1e-3;
  cfg.record_stride = 50;
  const Trajectory tr = evolve(un.input_state(), un.generator(), cfg);
  double worst = 0.0;
  for (std::size_t k = 0; k < tr.states.size(); ++k) {
    worst = std::max(worst, std::abs(un.coherence(tr.states[k]) - 0.5 * std::exp(-2.0 * tr.times[k])));
  }
  o.check(worst < 1e-6, fmt("max | |rho_{+1,-1}| - e^{-2t}/2 | on [0, 5]: %.3e", worst));

  const std::vector<double> grid = make_grid(2.0, 20.0, 8, true);
  const auto rec = scaling_sweep(prot, un, grid, 2, 2e-3);
  std::vector<double> qp, qu;
  for (const auto& r : rec) qp.push_back(r.qfi_protected), qu.push_back(r.qfi_unprotected);
  const double sp_slope = loglog_slope(grid, qp);
  const double su_slope = loglog_slope(grid, qu);
  o.check(su_slope <= 0.0, fmt("unprotected log-log QFI slope %.3f <= 0", su_slope));
  o.check(std::abs(sp_slope - 2.0) <= 0.05, fmt("protected log-log QFI slope %.6f (2.00 +- 0.05)", sp_slope));
  return o;
}

// A code passes when every dressed Lindblad operator meets the KL conditions
// and the lifted generator still separates the code states.
bool kl_code_passes(const CodeSpace& code, const std::vector<HermitianOperator>& couplings,
                    const HermitianOperator& g, double* violation) {
  std::vector<HermitianOperator> lifted;
  for (const auto& a : couplings) lifted.push_back(HermitianOperator::hermitian_part(code.lift_system(a.matrix())));
  const Dressing dr = two_level_dressing(code, 1.0, lifted);
  const KnillLaflamme kl = verify_knill_laflamme(code, dr.lindblads.flatten(1e-14));
  *violation = kl.violation;
  const EffectiveGenerator eff =
      effective_generator(code, HermitianOperator::hermitian_part(code.lift_system(g.matrix())));
  return kl.ok && std::abs(eff.delta) > 1e-6;
}

Outcome kl_consistency() {
  Outcome o;
  CounterRng rng(77, 6);
  int agree = 0, thm2_true = 0, counterexamples = 0, refined = 0;
  double worst_kl = 0.0, worst_dual = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const Index d = 2 + static_cast<Index>(rng.next() % 3);
    const int n = 1 + static_cast<int>(rng.next() % 3);
    std::vector<HermitianOperator> cs;
    for (int k = 0; k < n; ++k) cs.push_back(HermitianOperator(random_hermitian(rng, d)));
    HermitianOperator g(random_hermitian(rng, d));
    if (trial % 5 == 0) {
      // Plant g inside span{1, A, A A} so the negative verdict is exercised
      // even where the span is not the full matrix algebra.
      const CMatrix& a = cs[0].matrix();
      g = HermitianOperator::hermitian_part(rng.normal() * a + rng.normal() * a * a);
    }
    const CriterionReport verdict = thm2_condition(g, cs);
    const SdpProblem p = SdpProblem::from_couplings(g, quadratic_span_hermitian_generators(cs));

    bool found = false;
    if (verdict.verdict) {
      ++thm2_true;
      const SdpSolution s = solve_primal(p);
      double viol = 0.0;
      if (s.primal_value > 1e-9) {
        const CodeSpace code = code_from_sdp(s.g_tilde);
        found = kl_code_passes(code, cs, g, &viol);
        if (!found) {
          std::vector<CMatrix> ops;
          for (const auto& q : quadratic_span_generators(cs)) ops.push_back(code.lift_system(q));
          found = kl_code_passes(refine_code(code, ops), cs, g, &viol);
          refined += found ? 1 : 0;
        }
      }
      worst_kl = std::max(worst_kl, viol);
    } else {
      // No code satisfies the constraints with any signal: the dual value of
      // the SDP over the quadratic span certifies max signal = 0.
      const DualResult dual = solve_dual(p);
      worst_dual = std::max(worst_dual, dual.value);
      found = dual.value > 1e-6;
    }
    if (found == verdict.verdict) {
      ++agree;
    } else {
      ++counterexamples;
      o.notes.push_back(fmt("  disagreement: trial %.0f, d = %.0f, residual %.3e", trial, static_cast<double>(d),
                            verdict.residual_norm));
    }
  }
  o.check(counterexamples == 0, fmt("%.0f of 50 instances agree (%.0f with thm2 true)", agree, thm2_true));
  o.notes.push_back(fmt("  worst KL violation of accepted codes %.3e, codes needing refinement %.0f", worst_kl,
                        refined));
  o.notes.push_back(fmt("  largest dual certificate for thm2-false instances %.3e", worst_dual));
  return o;
}

Outcome leakage_order() {
  Outcome o;
  const CMatrix sx = spin1().x.matrix();
  const HermitianOperator h0 = HermitianOperator::hermitian_part(sz_squared().matrix() + 0.1 * sx);
  const LeakageReport r = perturbation_leakage(h0, sz_squared(), 1e-2);
  o.check(std::abs(r.order - 2.0) <= 0.1, fmt("fitted exponent %.4f (2.0 +- 0.1)", r.order));
  for (std::size_t k = 0; k < r.deltas.size(); ++k) {
    o.notes.push_back(fmt("  delta_omega %.4g: error %.4e", r.deltas[k], r.errors[k]));
  }
  o.notes.push_back(fmt("  max leakage ratio %.4e", r.max_ratio));
  return o;
}

Outcome hygiene() {
  Outcome o;
  const ProbeModel m = nv_protected_model(flat_spectrum(NoiseRegime::FullThermal, 0.2, 1.0));
  const LindbladGenerator gen = m.generator();
  const CMatrix rho0 = m.input_state();
  const double t = 2.0;

  SimConfig cfg;
  cfg.t_final = t;
  cfg.dt = 1e-3;
  cfg.record_stride = 10;
  const Trajectory tr = evolve(rho0, gen, cfg);
  o.check(tr.max_trace_drift < 1e-12, fmt("max trace drift %.3e", tr.max_trace_drift));
  o.check(tr.max_hermitian_deviation < 1e-12, fmt("max Hermitian deviation %.3e", tr.max_hermitian_deviation));
  o.check(tr.min_eigenvalue > -1e-12, fmt("min eigenvalue %.3e", tr.min_eigenvalue));

  // Reference: exp(t S) applied to vec(rho0).
  const CMatrix s = gen.superoperator();
  const CMatrix prop = (t * s).exp();
  const CVector v0 = Eigen::Map<const CVector>(rho0.data(), rho0.size());
  const CVector vt = prop * v0;
  const CMatrix exact = Eigen::Map<const CMatrix>(vt.data(), rho0.rows(), rho0.cols());
  o.check((tr.states.back() - exact).norm() < 1e-10,
          fmt("RK4 at dt = 1e-3 vs matrix exponential: %.3e", (tr.states.back() - exact).norm()));

  std::vector<double> errs;
  for (double dt : {0.02, 0.01, 0.005}) {
    SimConfig c;
    c.t_final = t;
    c.dt = dt;
    c.record_stride = 1 << 30;
    errs.push_back((evolve(rho0, gen, c).states.back() - exact).norm());
  }
  const double order1 = std::log2(errs[0] / errs[1]);
  const double order2 = std::log2(errs[1] / errs[2]);
  o.check(std::min(order1, order2) >= 3.8, fmt("RK4 order by dt halving %.3f, %.3f (>= 3.8)", order1, order2));
  o.notes.push_back(fmt("  errors %.3e, %.3e, %.3e", errs[0], errs[1], errs[2]));
  return o;
}

struct AcceptanceCase {
  int number;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<AcceptanceCase> criteria = {
      {1, "NV dephasing optimum", 1.0, nv_dephasing_optimum},
      {2, "sandwich certification", 30.0, sandwich},
      {3, "verdict table", 120.0, verdict_table},
      {4, "protected dynamics", 60.0, protected_dynamics},
      {5, "unprotected baseline", 60.0, unprotected_baseline},
      {6, "Knill-Laflamme / thm2 consistency", 300.0, kl_consistency},
      {7, "perturbation leakage order", 10.0, leakage_order},
      {8, "numerical hygiene", 60.0, hygiene},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.check(secs < c.budget_seconds, fmt("runtime %.2f s (budget %.0f s)", secs, c.budget_seconds));
    std::printf("Criterion %d: %s  (%s)\n", c.number, o.pass ? "PASS" : "FAIL", c.name);
    for (const auto& n : o.notes) std::printf("%s\n", n.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
