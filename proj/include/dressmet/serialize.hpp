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

// JSON forms of the composite objects exchanged between commands.
//
//   code:      {"sys_dim", "anc_dim", "psi0": vector, "psi1": vector}
//   noise:     {"regime", "gamma": {"kind": "flat"|"ohmic"|"peak0", "g", "beta"?, "nu_c"?,
//               "correlation"?: matrix}, "couplings": [operator...], "gap_tol"?}
//   model:     {"hamiltonian", "generator", "noise", "probe": {"psi0", "psi1"}}
//   sim:       {"t_final", "dt"?, "delta_omega"?, "record_stride"?}

#include "dressmet/codespace.hpp"
#include "dressmet/io.hpp"
#include "dressmet/sdp.hpp"
#include "dressmet/simulate.hpp"

namespace dressmet::io {

Json code_to_json(const CodeSpace& code);
CodeSpace code_from_json(const Json& j);

Json solution_to_json(const SdpSolution& s, const ConstructiveBound& cb);
/// The optimizer G~ of a solution document.
HermitianOperator g_tilde_from_json(const Json& j);

BathSpectrum spectrum_from_json(const Json& noise);

struct NoiseModel {
  BathSpectrum spectrum;
  std::vector<HermitianOperator> couplings;
  std::optional<double> gap_tol;
};
NoiseModel noise_from_json(const Json& noise);

ProbeModel model_from_json(const Json& j);
/// `noise` is stored verbatim since spectra are callbacks.
Json model_to_json(const ProbeModel& m, const Json& noise);

SimConfig sim_config_from_json(const Json& j);

}  // namespace dressmet::io
