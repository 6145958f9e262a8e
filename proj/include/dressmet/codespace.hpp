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

// Two-dimensional code spaces: purification of SDP optimizers, the
// decoherence-free and error-correction conditions, control Hamiltonians that
// make the code states separated eigenstates, and the search for codes that
// satisfy the compression conditions.

#include <cstdint>
#include <optional>
#include <vector>

#include "dressmet/lindblad.hpp"
#include "dressmet/operators.hpp"
#include "dressmet/sdp.hpp"

namespace dressmet {

/// span{psi0, psi1} inside H_S (x) H_A. Vectors are indexed s * anc_dim + a.
class CodeSpace {
 public:
  CodeSpace(StateVector psi0, StateVector psi1, Index sys_dim, Index anc_dim = 1,
            const Tolerances& tol = kDefaultTolerances);

  const StateVector& psi0() const { return psi0_; }
  const StateVector& psi1() const { return psi1_; }
  Index sys_dim() const { return sys_dim_; }
  Index anc_dim() const { return anc_dim_; }
  Index dim() const { return sys_dim_ * anc_dim_; }

  /// Isometry [psi0 psi1], dim x 2.
  CMatrix isometry() const;
  CMatrix projector() const;
  /// Reduced state of psi_i on the system.
  CMatrix reduced_state(int i) const;
  /// System operator lifted to the full space when an ancilla is present.
  CMatrix lift_system(const CMatrix& op) const;

 private:
  StateVector psi0_;
  StateVector psi1_;
  Index sys_dim_;
  Index anc_dim_;
};

/// Partial trace over the ancilla of a vector indexed s * anc_dim + a.
CMatrix partial_trace_ancilla(const CVector& psi, Index sys_dim, Index anc_dim);

/// Purifications with orthogonal ancilla supports: psi0 uses ancilla states
/// [0, r), psi1 uses [r, 2r), r = max rank. Throws DomainError unless both
/// inputs are unit-trace PSD.
CodeSpace purify_pair(const CMatrix& rho0, const CMatrix& rho1, const Tolerances& tol = kDefaultTolerances);

/// Orthonormal eigenbasis of the full space, used to evaluate the excitation
/// condition on the eigenstates outside the code space.
struct EigenContext {
  CMatrix vectors;  // columns
};

struct ConditionReport {
  double dephasing_violation = 0.0;   // max_a |<0|A|0> - <1|A|1>|
  double relaxation_violation = 0.0;  // max_a |<0|A|1>| (both orders)
  std::optional<double> excitation_violation;  // max_a,i |<i|A|0 or 1>| over eigenstates i outside C
  double kl_violation = 0.0;          // max_a ||V^dag A V - tr(V^dag A V)/2 1||_F
  double signal = 0.0;                // <1|G|1> - <0|G|0>

  bool passes(double tol) const {
    return dephasing_violation <= tol && relaxation_violation <= tol &&
           (!excitation_violation || *excitation_violation <= tol);
  }
};

/// Operators are given on the system space and lifted automatically when the
/// code carries an ancilla; full-space operators are also accepted.
ConditionReport check_conditions(const CodeSpace& code, const HermitianOperator& g,
                                 const std::vector<HermitianOperator>& couplings,
                                 const std::optional<EigenContext>& context = std::nullopt);

struct EffectiveGenerator {
  double g00 = 0.0;
  double g11 = 0.0;
  double delta = 0.0;  // g11 - g00
  double var = 0.0;    // delta^2 / 4, the variance on (|0> + |1>)/sqrt(2)
};

EffectiveGenerator effective_generator(const CodeSpace& code, const HermitianOperator& g);

struct ControlLevels {
  double lambda0 = 0.0;
  double lambda1 = 1.0;
  double complement = 10.0;
};

/// H_C = -h_free + lambda0 P0 + lambda1 P1 + complement (1 - P0 - P1), so that
/// h_free + H_C has eigenvalues lambda0, lambda1 on the code states and
/// `complement` elsewhere. Throws DomainError for coinciding levels.
HermitianOperator control_hamiltonian(const CodeSpace& code, const HermitianOperator& h_free,
                                      const ControlLevels& levels = {});

struct Dressing {
  HermitianOperator h_c;  // nu0 times the projector onto the complement of C
  LindbladSet lindblads;  // secular jump operators of the couplings under h_c
};

/// Two-eigenspace dressing: C at energy 0 and its complement at nu0.
Dressing two_level_dressing(const CodeSpace& code, double nu0, const std::vector<HermitianOperator>& couplings);

struct KnillLaflamme {
  bool ok = true;
  double violation = 0.0;  // max Frobenius deviation of P L P and P L^dag L' P from multiples of P
};

KnillLaflamme verify_knill_laflamme(const CodeSpace& code, const std::vector<CMatrix>& lindblads,
                                    const Tolerances& tol = kDefaultTolerances);

/// Builds a code from an SDP optimizer by splitting G~ into weight (rho1 - rho0)
/// and purifying. A trace residual up to 1e-6 ||G~||_F is projected out;
/// eigenvalues of G~ below `cutoff` (relative) are discarded.
CodeSpace code_from_sdp(const HermitianOperator& g_tilde, double cutoff = 1e-12);

// ---------------------------------------------------------------------------
// Compression-penalty search over orthonormal pairs

/// sum_a ||V^dag A_a V - tr(V^dag A_a V)/2 1||_F^2 for an isometry V (d x 2).
double compression_penalty(const CMatrix& v, const std::vector<CMatrix>& ops);

struct StiefelOptions {
  int max_iterations = 2000;
  double gradient_tol = 1e-13;
  double penalty_floor = 1e-28;  // stop once the penalty is numerically zero
};

struct StiefelResult {
  CMatrix v;  // d x 2 isometry
  double penalty = 0.0;
  int iterations = 0;
};

/// Riemannian gradient descent with Barzilai-Borwein steps, Armijo backtracking
/// and QR retraction, starting from v0.
StiefelResult minimize_compression_penalty(const std::vector<CMatrix>& ops, const CMatrix& v0,
                                           const StiefelOptions& opts = {});

struct NoGoResult {
  double min_penalty = 0.0;
  CMatrix best;         // isometry reaching min_penalty
  int restarts = 0;
  int below_1e10 = 0;   // restarts whose penalty fell below 1e-10
};

/// Minimizes the penalty from `restarts` random orthonormal pairs; restart k
/// draws from stream k of `seed`. Restarts run on up to `jobs` threads and the
/// result is independent of the thread count.
NoGoResult no_go_search(const std::vector<HermitianOperator>& couplings, Index sys_dim, int restarts,
                        std::uint64_t seed = 0, int jobs = 1, const StiefelOptions& opts = {});

/// Refines an existing code toward the compression conditions for a general
/// operator list, keeping it as close as the descent allows to the start.
CodeSpace refine_code(const CodeSpace& code, const std::vector<CMatrix>& ops, const StiefelOptions& opts = {});

}  // namespace dressmet
