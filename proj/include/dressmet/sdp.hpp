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

// Optimal code design as a semidefinite program over the reduced signal
// difference G~ = rho1 - rho0:
//
//   maximize   tr(G G~)
//   subject to tr(G~) = 0,  tr(A_a G~) = 0,  -X <= G~ <= X,  tr(X) <= 2.
//
// Three independent routes bracket the optimum:
//   constructive_bound  feasible point built from the projection of G (lower bound)
//   solve_primal        log-det barrier interior-point method (near-optimal feasible point)
//   solve_dual          2 min_c ||G - sum_k c_k C_k||_op by subgradient descent (upper bound)

#include <optional>
#include <vector>

#include "dressmet/operators.hpp"

namespace dressmet {

struct SdpProblem {
  HermitianOperator g;
  std::vector<HermitianOperator> constraints;  // constraints[0] is the identity

  /// {1, A_1, ..., A_n}.
  static SdpProblem from_couplings(const HermitianOperator& g, const std::vector<HermitianOperator>& couplings);

  Index dim() const { return g.dim(); }
  /// Throws DimensionError / DomainError if the invariants do not hold.
  void validate() const;
};

struct ConstructiveBound {
  double value = 0.0;                    // 2 tr(g_perp^2) / tr|g_perp|
  std::optional<HermitianOperator> rho0;  // empty when g lies in the span
  std::optional<HermitianOperator> rho1;
  HermitianOperator g_perp;
};

ConstructiveBound constructive_bound(const SdpProblem& p, const Tolerances& tol = kDefaultTolerances);
ConstructiveBound constructive_bound(const HermitianOperator& g, const std::vector<HermitianOperator>& couplings,
                                     const Tolerances& tol = kDefaultTolerances);

struct DualResult {
  double value = 0.0;  // 2 ||G - sum c_k C_k||_op at the best coefficients found
  RVector coeffs;      // one per constraint
  int iterations = 0;
  bool certified = false;  // false: iteration cap reached before stabilizing
};

struct DualOptions {
  double tol = 1e-8;
  int max_iterations = 20000;
  int window = 50;
  /// Starting coefficients for the non-identity constraints; the better of
  /// this and the least-squares start is used.
  std::optional<RVector> start;
};

DualResult solve_dual(const SdpProblem& p, const DualOptions& opts = {});

struct SdpSolution {
  double primal_value = 0.0;
  HermitianOperator g_tilde;
  HermitianOperator x_certificate;
  double dual_value = 0.0;
  RVector dual_coeffs;
  double gap = 0.0;  // dual_value - primal_value
  int iterations = 0;  // Newton steps of the primal solver
  int dual_iterations = 0;
  double duality_measure = 0.0;  // barrier parameter times (2d + 1) at exit
  bool certified = false;        // dual converged and gap within the requested tolerance scale
};

struct PrimalOptions {
  double tol = 1e-8;
  double mu_start = 1.0;
  double mu_factor = 5.0;
  int max_newton_per_stage = 200;
  double certify_gap = 1e-6;
};

SdpSolution solve_primal(const SdpProblem& p, const PrimalOptions& opts = {},
                         const Tolerances& tol = kDefaultTolerances);

/// Objective tr(G G~) and the largest violation of the SDP constraints for a
/// candidate (G~, X); used to audit solutions from any source.
struct FeasibilityAudit {
  double objective = 0.0;
  double equality_violation = 0.0;  // max_k |tr(C_k G~)|
  double cone_violation = 0.0;      // max(0, -min eig(X - G~), -min eig(X + G~))
  double trace_excess = 0.0;        // max(0, tr X - 2)
};

FeasibilityAudit audit_feasibility(const SdpProblem& p, const HermitianOperator& g_tilde,
                                   const HermitianOperator& x);

}  // namespace dressmet
