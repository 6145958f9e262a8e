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

// Python bindings. Operators cross the boundary as complex numpy arrays and
// are validated on entry; library exceptions map to Python exception classes.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dressmet/codespace.hpp"
#include "dressmet/criteria.hpp"
#include "dressmet/errors.hpp"
#include "dressmet/nv.hpp"
#include "dressmet/sdp.hpp"
#include "dressmet/simulate.hpp"

namespace py = pybind11;
using namespace dressmet;

namespace {

HermitianOperator herm(const CMatrix& m) { return HermitianOperator(m); }

std::vector<HermitianOperator> herms(const std::vector<CMatrix>& ms) {
  std::vector<HermitianOperator> out;
  out.reserve(ms.size());
  for (const auto& m : ms) out.emplace_back(m);
  return out;
}

}  // namespace

PYBIND11_MODULE(_dressmet, m) {
  m.doc() = "Heisenberg-scaling metrology under Markovian noise";
  m.attr("__version__") = DRESSMET_VERSION;

  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  m.def("spin_matrices", [](int two_s) {
    const SpinMatrices s = spin_matrices(two_s);
    return py::make_tuple(s.x.matrix(), s.y.matrix(), s.z.matrix());
  }, py::arg("two_s"), "(S_x, S_y, S_z) for spin two_s/2, basis ordered m = s, ..., -s.");

  // criteria
  py::class_<CriterionReport>(m, "CriterionReport")
      .def_property_readonly("criterion", [](const CriterionReport& r) { return std::string(to_string(r.criterion)); })
      .def_readonly("verdict", &CriterionReport::verdict)
      .def_readonly("marginal", &CriterionReport::marginal)
      .def_readonly("residual_norm", &CriterionReport::residual_norm)
      .def_readonly("span_dim", &CriterionReport::span_dim)
      .def_readonly("g_perp", &CriterionReport::g_perp)
      .def("__bool__", [](const CriterionReport& r) { return r.verdict; });

  m.def("thm1_condition", [](const CMatrix& g, const std::vector<CMatrix>& a) {
    return thm1_condition(herm(g), herms(a));
  }, py::arg("g"), py::arg("couplings"));
  m.def("thm2_condition", [](const CMatrix& g, const std::vector<CMatrix>& a) {
    return thm2_condition(herm(g), herms(a));
  }, py::arg("g"), py::arg("couplings"));
  m.def("hnls_condition", [](const CMatrix& g, const std::vector<CMatrix>& l) {
    return hnls_condition(herm(g), l);
  }, py::arg("g"), py::arg("lindblads"));

  // sdp
  py::class_<SdpSolution>(m, "SdpSolution")
      .def_readonly("primal_value", &SdpSolution::primal_value)
      .def_property_readonly("g_tilde", [](const SdpSolution& s) { return s.g_tilde.matrix(); })
      .def_property_readonly("x_certificate", [](const SdpSolution& s) { return s.x_certificate.matrix(); })
      .def_readonly("dual_value", &SdpSolution::dual_value)
      .def_readonly("dual_coeffs", &SdpSolution::dual_coeffs)
      .def_readonly("gap", &SdpSolution::gap)
      .def_readonly("iterations", &SdpSolution::iterations)
      .def_readonly("certified", &SdpSolution::certified);

  m.def("solve_primal", [](const CMatrix& g, const std::vector<CMatrix>& a, double tol) {
    PrimalOptions o;
    o.tol = tol;
    return solve_primal(SdpProblem::from_couplings(herm(g), herms(a)), o);
  }, py::arg("g"), py::arg("couplings"), py::arg("tol") = 1e-8);
  m.def("solve_dual", [](const CMatrix& g, const std::vector<CMatrix>& a) {
    const DualResult r = solve_dual(SdpProblem::from_couplings(herm(g), herms(a)));
    return py::make_tuple(r.value, r.coeffs, r.certified);
  }, py::arg("g"), py::arg("couplings"), "(value, coefficients, certified)");
  m.def("constructive_bound", [](const CMatrix& g, const std::vector<CMatrix>& a) {
    return constructive_bound(herm(g), herms(a)).value;
  }, py::arg("g"), py::arg("couplings"));

  // codespace
  py::class_<CodeSpace>(m, "CodeSpace")
      .def(py::init([](const CVector& psi0, const CVector& psi1, Index sys_dim, Index anc_dim) {
             return CodeSpace(StateVector(psi0), StateVector(psi1), sys_dim, anc_dim);
           }),
           py::arg("psi0"), py::arg("psi1"), py::arg("sys_dim"), py::arg("anc_dim") = 1)
      .def_property_readonly("psi0", [](const CodeSpace& c) { return c.psi0().amplitudes(); })
      .def_property_readonly("psi1", [](const CodeSpace& c) { return c.psi1().amplitudes(); })
      .def_property_readonly("sys_dim", &CodeSpace::sys_dim)
      .def_property_readonly("anc_dim", &CodeSpace::anc_dim)
      .def("isometry", &CodeSpace::isometry)
      .def("projector", &CodeSpace::projector)
      .def("reduced_state", &CodeSpace::reduced_state, py::arg("i"));

  py::class_<ConditionReport>(m, "ConditionReport")
      .def_readonly("dephasing_violation", &ConditionReport::dephasing_violation)
      .def_readonly("relaxation_violation", &ConditionReport::relaxation_violation)
      .def_readonly("excitation_violation", &ConditionReport::excitation_violation)
      .def_readonly("kl_violation", &ConditionReport::kl_violation)
      .def_readonly("signal", &ConditionReport::signal)
      .def("passes", &ConditionReport::passes, py::arg("tol"));

  m.def("code_from_sdp", [](const CMatrix& g_tilde, double cutoff) {
    return code_from_sdp(HermitianOperator(g_tilde, Tolerances{.hermitian = 1e-9}), cutoff);
  }, py::arg("g_tilde"), py::arg("cutoff") = 1e-12);
  m.def("check_conditions", [](const CodeSpace& c, const CMatrix& g, const std::vector<CMatrix>& a) {
    return check_conditions(c, herm(g), herms(a));
  }, py::arg("code"), py::arg("g"), py::arg("couplings"));
  m.def("effective_generator", [](const CodeSpace& c, const CMatrix& g) {
    const EffectiveGenerator e = effective_generator(c, herm(g));
    return py::dict(py::arg("g00") = e.g00, py::arg("g11") = e.g11, py::arg("delta") = e.delta,
                    py::arg("var") = e.var);
  }, py::arg("code"), py::arg("g"));
  m.def("two_level_dressing", [](const CodeSpace& c, double nu0, const std::vector<CMatrix>& a) {
    const Dressing d = two_level_dressing(c, nu0, herms(a));
    return py::make_tuple(d.h_c.matrix(), d.lindblads.flatten());
  }, py::arg("code"), py::arg("nu0"), py::arg("couplings"), "(H_C, flattened jump operators)");
  m.def("verify_knill_laflamme", [](const CodeSpace& c, const std::vector<CMatrix>& l) {
    const KnillLaflamme kl = verify_knill_laflamme(c, l);
    return py::make_tuple(kl.ok, kl.violation);
  }, py::arg("code"), py::arg("lindblads"), "(ok, violation)");
  m.def("compression_penalty", &compression_penalty, py::arg("v"), py::arg("ops"));

  py::class_<NoGoResult>(m, "NoGoResult")
      .def_readonly("min_penalty", &NoGoResult::min_penalty)
      .def_readonly("best", &NoGoResult::best)
      .def_readonly("restarts", &NoGoResult::restarts)
      .def_readonly("below_1e10", &NoGoResult::below_1e10);
  m.def("no_go_search", [](const std::vector<CMatrix>& a, int restarts, std::uint64_t seed, int jobs) {
    if (a.empty()) throw DomainError("no_go_search: at least one coupling is required");
    const auto ops = herms(a);
    py::gil_scoped_release release;
    return no_go_search(ops, ops.front().dim(), restarts, seed, jobs);
  }, py::arg("couplings"), py::arg("restarts") = 200, py::arg("seed") = 0, py::arg("jobs") = 1);

  // lindblad
  py::class_<BathSpectrum>(m, "BathSpectrum")
      .def_property_readonly("regime", [](const BathSpectrum& s) { return std::string(to_string(s.regime)); })
      .def("rates", &BathSpectrum::rates, py::arg("nu"), py::arg("n"));
  m.def("flat_spectrum", [](const std::string& regime, double g, std::optional<double> beta,
                            std::optional<CMatrix> corr) {
    return flat_spectrum(regime_from_string(regime), g, beta, corr);
  }, py::arg("regime"), py::arg("g"), py::arg("beta") = py::none(), py::arg("correlation") = py::none());
  m.def("ohmic_spectrum", [](const std::string& regime, double g, double nu_c, std::optional<double> beta,
                             std::optional<CMatrix> corr) {
    return ohmic_spectrum(regime_from_string(regime), g, nu_c, beta, corr);
  }, py::arg("regime"), py::arg("g"), py::arg("nu_c"), py::arg("beta") = py::none(),
     py::arg("correlation") = py::none());
  m.def("peak0_spectrum", [](const std::string& regime, double g, std::optional<CMatrix> corr) {
    return peak0_spectrum(regime_from_string(regime), g, corr);
  }, py::arg("regime"), py::arg("g"), py::arg("correlation") = py::none());

  py::class_<LindbladGenerator>(m, "LindbladGenerator")
      .def(py::init([](const CMatrix& h, const std::vector<CMatrix>& a, const BathSpectrum& s,
                       std::optional<double> gap_tol) {
             const HermitianOperator hs = herm(h);
             return LindbladGenerator(hs, jump_operators(hs, herms(a), gap_tol), s);
           }),
           py::arg("h"), py::arg("couplings"), py::arg("spectrum"), py::arg("gap_tol") = py::none())
      .def_property_readonly("dim", &LindbladGenerator::dim)
      .def_property_readonly("hamiltonian", &LindbladGenerator::hamiltonian)
      .def_property_readonly("effective_operators", &LindbladGenerator::effective_operators)
      .def_property_readonly("total_rate", &LindbladGenerator::total_rate)
      .def("apply", &LindbladGenerator::apply, py::arg("rho"))
      .def("superoperator", &LindbladGenerator::superoperator)
      .def("norm_bound", &LindbladGenerator::norm_bound)
      .def("with_hamiltonian_shift", &LindbladGenerator::with_hamiltonian_shift, py::arg("extra"));

  // simulate
  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("times", &Trajectory::times)
      .def_readonly("states", &Trajectory::states)
      .def_readonly("steps", &Trajectory::steps)
      .def_readonly("max_trace_drift", &Trajectory::max_trace_drift)
      .def_readonly("min_eigenvalue", &Trajectory::min_eigenvalue)
      .def_readonly("max_hermitian_deviation", &Trajectory::max_hermitian_deviation);
  m.def("evolve", [](const CMatrix& rho0, const LindbladGenerator& gen, double t_final, double dt, int stride) {
    SimConfig cfg;
    cfg.t_final = t_final;
    cfg.dt = dt;
    cfg.record_stride = stride;
    py::gil_scoped_release release;
    return evolve(rho0, gen, cfg);
  }, py::arg("rho0"), py::arg("generator"), py::arg("t_final"), py::arg("dt") = 0.0, py::arg("record_stride") = 1);

  m.def("fidelity", &fidelity, py::arg("a"), py::arg("b"), py::arg("cutoff") = 1e-12);
  m.def("sld_qfi", &sld_qfi, py::arg("rho"), py::arg("drho"), py::arg("cutoff") = 1e-12);
  m.def("crlb", &crlb, py::arg("qfi"), py::arg("k") = 1);
  m.def("qfi_analytic", [](const CodeSpace& c, const CMatrix& g, double t) { return qfi_analytic(c, herm(g), t); },
        py::arg("code"), py::arg("g"), py::arg("t"));

  py::class_<NumericQfi>(m, "NumericQfi")
      .def_readonly("value", &NumericQfi::value)
      .def_readonly("coarse", &NumericQfi::coarse)
      .def_readonly("fine", &NumericQfi::fine)
      .def_readonly("reliable", &NumericQfi::reliable);
  m.def("qfi_numeric", [](const LindbladGenerator& gen, const CMatrix& g, const CMatrix& rho0, double t, double delta,
                          double dt) { return qfi_numeric(gen, herm(g), rho0, t, delta, dt); },
        py::arg("generator"), py::arg("g"), py::arg("rho0"), py::arg("t"), py::arg("delta") = 0.0,
        py::arg("dt") = 0.0);
  m.def("qfi_trajectory", [](const LindbladGenerator& gen, const CMatrix& g, const CMatrix& rho0,
                             const std::vector<double>& times, double dt) {
    const QfiTrajectory q = qfi_trajectory(gen, herm(g), rho0, times, dt);
    return py::make_tuple(q.times, q.qfi);
  }, py::arg("generator"), py::arg("g"), py::arg("rho0"), py::arg("times"), py::arg("dt") = 0.0, "(times, qfi)");

  py::class_<ProbeModel>(m, "ProbeModel")
      .def_property_readonly("h", [](const ProbeModel& p) { return p.h.matrix(); })
      .def_property_readonly("g", [](const ProbeModel& p) { return p.g.matrix(); })
      .def_readonly("psi0", &ProbeModel::psi0)
      .def_readonly("psi1", &ProbeModel::psi1)
      .def("generator", &ProbeModel::generator)
      .def("input_state", &ProbeModel::input_state)
      .def("coherence", &ProbeModel::coherence, py::arg("rho"));

  py::class_<ScalingRecord>(m, "ScalingRecord")
      .def_readonly("t", &ScalingRecord::t)
      .def_readonly("qfi_protected", &ScalingRecord::qfi_protected)
      .def_readonly("qfi_unprotected", &ScalingRecord::qfi_unprotected)
      .def_readonly("coherence", &ScalingRecord::coherence)
      .def_readonly("crlb", &ScalingRecord::crlb);
  m.def("scaling_sweep", [](const ProbeModel& p, const ProbeModel& u, const std::vector<double>& t, int jobs,
                            double dt) {
    py::gil_scoped_release release;
    return scaling_sweep(p, u, t, jobs, dt);
  }, py::arg("protected_model"), py::arg("unprotected_model"), py::arg("tgrid"), py::arg("jobs") = 1,
     py::arg("dt") = 0.0);
  m.def("make_grid", &make_grid, py::arg("a"), py::arg("b"), py::arg("n"), py::arg("log") = false);
  m.def("loglog_slope", &loglog_slope, py::arg("t"), py::arg("y"));

  py::class_<LeakageReport>(m, "LeakageReport")
      .def_readonly("corrections", &LeakageReport::corrections)
      .def_readonly("max_ratio", &LeakageReport::max_ratio)
      .def_readonly("deltas", &LeakageReport::deltas)
      .def_readonly("errors", &LeakageReport::errors)
      .def_readonly("order", &LeakageReport::order);
  m.def("perturbation_leakage", [](const CMatrix& h0, const CMatrix& g, double dw) {
    return perturbation_leakage(herm(h0), herm(g), dw);
  }, py::arg("h0"), py::arg("g"), py::arg("delta_omega"));

  // nv
  m.def("nv_hamiltonian", [](double d, double e, double gamma_e, std::array<double, 3> b, double dw) {
    NvParams p;
    p.d_split = d;
    p.e_strain = e;
    p.gamma_e = gamma_e;
    p.b_field = b;
    p.delta_omega = dw;
    return nv_hamiltonian(p).matrix();
  }, py::arg("d_split") = 1.0, py::arg("e_strain") = 0.0, py::arg("gamma_e") = 1.0,
     py::arg("b_field") = std::array<double, 3>{0.0, 0.0, 0.0}, py::arg("delta_omega") = 0.0);
  m.def("nv_dressed_hamiltonian", [](double bx) { return nv_dressed_hamiltonian(bx).matrix(); },
        py::arg("bx") = 0.1);
  m.def("nv_bare_code", &nv_bare_code);
  m.def("nv_ancilla_code", &nv_ancilla_code);
  m.def("nv_protected_model", &nv_protected_model, py::arg("spectrum"), py::arg("bx") = 0.1);
  m.def("nv_unprotected_model", &nv_unprotected_model, py::arg("spectrum"));

  py::class_<VerdictCell>(m, "VerdictCell")
      .def_readonly("regime", &VerdictCell::regime)
      .def_readonly("ancilla", &VerdictCell::ancilla)
      .def_readonly("achievable", &VerdictCell::achievable)
      .def_readonly("witness", &VerdictCell::witness)
      .def_readonly("witness_value", &VerdictCell::witness_value)
      .def("__repr__", [](const VerdictCell& c) {
        return "<VerdictCell " + c.regime + (c.ancilla ? "+ancilla " : " ") + (c.achievable ? "HS" : "no HS") + ">";
      });
  m.def("nv_verdict", [](const std::string& regime, bool ancilla, int restarts, std::uint64_t seed, int jobs) {
    py::gil_scoped_release release;
    return nv_verdict(regime, ancilla, restarts, seed, jobs);
  }, py::arg("regime"), py::arg("ancilla") = false, py::arg("restarts") = 200, py::arg("seed") = 0,
     py::arg("jobs") = 1);
  m.def("nv_verdict_markdown", [](int restarts, std::uint64_t seed, int jobs) {
    py::gil_scoped_release release;
    return nv_verdict_table(restarts, seed, jobs).markdown();
  }, py::arg("restarts") = 200, py::arg("seed") = 0, py::arg("jobs") = 1);
}
