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

// Secular GKSL generator built from the eigenstructure of the (dressed) system
// Hamiltonian:
//
//   L_a(nu) = sum_{e' - e = nu} P_e A_a P_e'
//   D[rho]  = sum_nu sum_ab gamma_ab(nu) (L_b rho L_a^dag - {L_a^dag L_b, rho}/2)
//
// Jump operators L_a(nu) lower the energy by nu.

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "dressmet/operators.hpp"

namespace dressmet {

struct EnergyGroup {
  double energy = 0.0;  // mean of the clustered eigenvalues
  CMatrix projector;
  Index multiplicity = 0;
};

/// Eigenvalues clustered by single linkage at `gap_tol`. Throws DomainError if
/// gap_tol <= 0 and NumericalError if a cluster spans more than 10 gap_tol.
std::vector<EnergyGroup> eigendecompose_grouped(const HermitianOperator& h, double gap_tol);

/// 1e-9 * ||h||_op, floored at 1e-9 so that h = 0 still has a usable tolerance.
double default_gap_tol(const HermitianOperator& h);

struct Transition {
  double nu = 0.0;
  std::vector<CMatrix> ops;  // one per coupling
};

struct LindbladSet {
  Index dim = 0;
  std::size_t n_couplings = 0;
  std::vector<Transition> transitions;  // ascending nu; the nu = 0 bin is exactly zero

  /// Transition at frequency nu (within tol), or nullptr.
  const Transition* find(double nu, double tol = 1e-9) const;
  /// Every jump operator with a nonzero entry, in transition order.
  std::vector<CMatrix> flatten(double drop = 0.0) const;
};

LindbladSet jump_operators(const HermitianOperator& h, const std::vector<HermitianOperator>& couplings,
                           std::optional<double> gap_tol = std::nullopt);

enum class NoiseRegime { DephasingOnly, LowTemperature, FullThermal };

std::string_view to_string(NoiseRegime r);
NoiseRegime regime_from_string(std::string_view s);

/// Bath spectral density gamma_ab(nu), either a scalar profile times a
/// correlation matrix (identity when absent) or a general matrix callback.
/// The regime filter is applied on top: DephasingOnly keeps nu = 0 only,
/// LowTemperature drops nu < 0.
struct BathSpectrum {
  NoiseRegime regime = NoiseRegime::FullThermal;
  std::function<double(double)> profile;
  std::optional<CMatrix> correlation;
  std::function<CMatrix(double)> gamma_matrix;  // overrides profile when set
  std::function<CMatrix(double)> lamb;          // Hermitian S_ab(nu); empty means zero

  /// Filtered rates at nu, validated Hermitian PSD. `n` is the coupling count.
  CMatrix rates(double nu, std::size_t n) const;
  /// Lamb coefficients at nu (zero if none were supplied).
  CMatrix lamb_coefficients(double nu, std::size_t n) const;
};

/// gamma(nu) = g C for nu >= 0 and g C e^{beta nu} for nu < 0 (beta = 0:
/// infinite temperature). C defaults to the identity.
BathSpectrum flat_spectrum(NoiseRegime regime, double g, std::optional<double> beta = std::nullopt,
                           std::optional<CMatrix> correlation = std::nullopt);
/// gamma(nu) = g nu e^{-nu/nu_c} C for nu > 0, zero at nu = 0, and the
/// detailed-balance image g |nu| e^{-|nu|/nu_c} e^{-beta |nu|} C for nu < 0.
BathSpectrum ohmic_spectrum(NoiseRegime regime, double g, double nu_c, std::optional<double> beta = std::nullopt,
                            std::optional<CMatrix> correlation = std::nullopt);
/// gamma(0) = g C, zero elsewhere.
BathSpectrum peak0_spectrum(NoiseRegime regime, double g, std::optional<CMatrix> correlation = std::nullopt);

/// Dissipator contribution for a density matrix. Throws DomainError if gamma
/// is not PSD at a realized frequency.
CMatrix dissipator(const CMatrix& rho, const LindbladSet& lset, const BathSpectrum& spectrum);

HermitianOperator lamb_shift(const LindbladSet& lset, const BathSpectrum& spectrum);

CMatrix gksl_rhs(const CMatrix& rho, const HermitianOperator& h_s, const LindbladSet& lset,
                 const BathSpectrum& spectrum);

/// GKSL generator with the spectrum sampled once at the realized frequencies.
/// Each rate matrix is diagonalized so the dissipator runs over effective
/// operators K_k = sqrt(lambda_k) sum_b conj(u_kb) L_b.
class LindbladGenerator {
 public:
  LindbladGenerator(const HermitianOperator& h_s, const LindbladSet& lset, const BathSpectrum& spectrum);
  /// Unitary generator only.
  explicit LindbladGenerator(const HermitianOperator& h_s);

  Index dim() const { return h_.rows(); }
  /// H_S + H_LS.
  const CMatrix& hamiltonian() const { return h_; }
  const std::vector<CMatrix>& effective_operators() const { return k_; }
  /// Sum of the effective rates (trace of every sampled rate matrix).
  double total_rate() const { return total_rate_; }

  /// Returns a copy with `extra` added to the Hamiltonian; the dissipator is
  /// unchanged (signal injection).
  LindbladGenerator with_hamiltonian_shift(const CMatrix& extra) const;

  CMatrix apply(const CMatrix& rho) const;
  /// Column-major vectorized superoperator, d^2 x d^2.
  CMatrix superoperator() const;
  /// Upper bound on the operator norm: 2 ||H||_op + 2 sum ||K||_op^2.
  double norm_bound() const;

 private:
  LindbladGenerator() = default;
  CMatrix h_;
  std::vector<CMatrix> k_;
  CMatrix kk_;  // sum K^dag K
  double total_rate_ = 0.0;
};

}  // namespace dressmet
