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

#include "dressmet/serialize.hpp"

#include "dressmet/errors.hpp"

namespace dressmet::io {

Json code_to_json(const CodeSpace& code) {
  return Json{{"sys_dim", code.sys_dim()},
              {"anc_dim", code.anc_dim()},
              {"psi0", vector_to_json(code.psi0().amplitudes())},
              {"psi1", vector_to_json(code.psi1().amplitudes())}};
}

CodeSpace code_from_json(const Json& j) {
  try {
    return CodeSpace(StateVector::normalized(vector_from_json(j.at("psi0"))),
                     StateVector::normalized(vector_from_json(j.at("psi1"))), j.at("sys_dim").get<Index>(),
                     j.value("anc_dim", Index{1}));
  } catch (const Json::exception& e) {
    throw DomainError(std::string("code JSON: ") + e.what());
  }
}

Json solution_to_json(const SdpSolution& s, const ConstructiveBound& cb) {
  Json coeffs = Json::array();
  for (Index k = 0; k < s.dual_coeffs.size(); ++k) coeffs.push_back(s.dual_coeffs[k]);
  return Json{{"primal_value", s.primal_value},
              {"dual_value", s.dual_value},
              {"gap", s.gap},
              {"constructive_bound", cb.value},
              {"certified", s.certified},
              {"iterations", s.iterations},
              {"dual_iterations", s.dual_iterations},
              {"duality_measure", s.duality_measure},
              {"dual_coeffs", std::move(coeffs)},
              {"g_tilde", operator_to_json(s.g_tilde)},
              {"x_certificate", operator_to_json(s.x_certificate)}};
}

HermitianOperator g_tilde_from_json(const Json& j) {
  if (!j.contains("g_tilde")) throw DomainError("solution JSON: missing \"g_tilde\"");
  return HermitianOperator(matrix_from_json(j.at("g_tilde")), Tolerances{.hermitian = 1e-9});
}

BathSpectrum spectrum_from_json(const Json& noise) {
  try {
    const NoiseRegime regime = regime_from_string(noise.value("regime", std::string("thermal")));
    const Json& gj = noise.at("gamma");
    const std::string kind = gj.at("kind").get<std::string>();
    const double g = gj.at("g").get<double>();
    std::optional<double> beta;
    if (gj.contains("beta")) beta = gj.at("beta").get<double>();
    std::optional<CMatrix> corr;
    if (gj.contains("correlation")) corr = matrix_from_json(gj.at("correlation"));
    if (kind == "flat") return flat_spectrum(regime, g, beta, corr);
    if (kind == "ohmic") return ohmic_spectrum(regime, g, gj.at("nu_c").get<double>(), beta, corr);
    if (kind == "peak0") return peak0_spectrum(regime, g, corr);
    throw DomainError("noise JSON: unknown gamma kind '" + kind + "'");
  } catch (const Json::exception& e) {
    throw DomainError(std::string("noise JSON: ") + e.what());
  }
}

NoiseModel noise_from_json(const Json& noise) {
  NoiseModel m;
  m.spectrum = spectrum_from_json(noise);
  try {
    for (const auto& c : noise.at("couplings")) m.couplings.push_back(operator_from_json(c));
    if (noise.contains("gap_tol")) m.gap_tol = noise.at("gap_tol").get<double>();
  } catch (const Json::exception& e) {
    throw DomainError(std::string("noise JSON: ") + e.what());
  }
  return m;
}

ProbeModel model_from_json(const Json& j) {
  try {
    ProbeModel m;
    m.h = operator_from_json(j.at("hamiltonian"));
    m.g = operator_from_json(j.at("generator"));
    NoiseModel n = noise_from_json(j.at("noise"));
    m.spectrum = std::move(n.spectrum);
    m.couplings = std::move(n.couplings);
    m.gap_tol = n.gap_tol;
    m.psi0 = vector_from_json(j.at("probe").at("psi0"));
    m.psi1 = vector_from_json(j.at("probe").at("psi1"));
    return m;
  } catch (const Json::exception& e) {
    throw DomainError(std::string("model JSON: ") + e.what());
  }
}

Json model_to_json(const ProbeModel& m, const Json& noise) {
  Json n = noise;
  Json cs = Json::array();
  for (const auto& c : m.couplings) cs.push_back(operator_to_json(c));
  n["couplings"] = std::move(cs);
  if (m.gap_tol) n["gap_tol"] = *m.gap_tol;
  return Json{{"hamiltonian", operator_to_json(m.h)},
              {"generator", operator_to_json(m.g)},
              {"noise", std::move(n)},
              {"probe", {{"psi0", vector_to_json(m.psi0)}, {"psi1", vector_to_json(m.psi1)}}}};
}

SimConfig sim_config_from_json(const Json& j) {
  try {
    SimConfig c;
    c.t_final = j.at("t_final").get<double>();
    c.dt = j.value("dt", 0.0);
    c.delta_omega = j.value("delta_omega", 0.0);
    c.record_stride = j.value("record_stride", 1);
    c.validate();
    return c;
  } catch (const Json::exception& e) {
    throw DomainError(std::string("sim config JSON: ") + e.what());
  }
}

}  // namespace dressmet::io
