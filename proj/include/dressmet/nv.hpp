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

// Spin-1 NV centre in the S_z basis ordered (|+1>, |0>, |-1>):
//
//   H = (D + dw) S_z^2 - E (S_x^2 - S_y^2) + gamma_e S . B
//
// Natural units: D = 1 unless set otherwise.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "dressmet/codespace.hpp"
#include "dressmet/simulate.hpp"

namespace dressmet {

struct NvParams {
  double d_split = 1.0;
  double e_strain = 0.0;
  double gamma_e = 1.0;
  std::array<double, 3> b_field{0.0, 0.0, 0.0};
  double delta_omega = 0.0;
};

HermitianOperator nv_hamiltonian(const NvParams& p);

/// Second-order effect of a perpendicular field:
/// ((gamma_e bx)^2 / (2 D)) [3 S_z^2 - (S_x^2 - S_y^2)].
/// Throws DomainError unless |gamma_e bx / D| < 0.2.
HermitianOperator nv_control_bx(double bx, double d_split, double gamma_e);

/// {|0>, |psi->, |psi+>} with |psi+-> = (|+1> +- |-1>)/sqrt(2).
std::array<StateVector, 3> nv_dressed_basis();

/// span{|0>|down>, |psi->|up>} on NV (x) spin-1/2, ancilla ordered (up, down).
CodeSpace nv_ancilla_code();

/// span{|0>, |psi->} without ancilla.
CodeSpace nv_bare_code();

/// D S_z^2 + nv_control_bx(bx): eigenbasis exactly the dressed basis.
HermitianOperator nv_dressed_hamiltonian(double bx = 0.1, double d_split = 1.0, double gamma_e = 1.0);

/// Effective control formula against exact diagonalization of
/// D S_z^2 + gamma_e bx S_x. Energies are relative to the lowest level.
struct BxComparison {
  double ratio = 0.0;                      // gamma_e bx / D
  std::array<double, 3> effective_energies{};  // for |0>, |psi->, |psi+>
  std::array<double, 3> exact_energies{};      // for the exact states matched to the same order
  std::array<double, 3> overlaps{};        // |<exact|effective>|
  std::array<double, 3> block_overlaps{};  // overlaps after projecting exact states onto their m-blocks
  double max_energy_error = 0.0;
};

BxComparison nv_compare_bx(double bx, double d_split = 1.0, double gamma_e = 1.0);

/// Probe models for the scaling sweep: the dressed code {|0>, |psi->} with
/// G = S_z^2 under `regime`, and the undressed superposition of |+1>, |-1>
/// with G = S_z under the same spectrum.
ProbeModel nv_protected_model(const BathSpectrum& spectrum, double bx = 0.1);
ProbeModel nv_unprotected_model(const BathSpectrum& spectrum);

struct VerdictCell {
  std::string regime;      // dephasing | relaxation | thermal
  bool ancilla = false;
  bool achievable = false;
  std::string witness;     // what was checked
  double witness_value = 0.0;
};

struct VerdictTable {
  std::vector<VerdictCell> cells;
  std::string markdown() const;
};

VerdictCell nv_verdict(const std::string& regime, bool ancilla, int restarts = 200, std::uint64_t seed = 0,
                       int jobs = 1);
VerdictTable nv_verdict_table(int restarts = 200, std::uint64_t seed = 0, int jobs = 1);

}  // namespace dressmet
