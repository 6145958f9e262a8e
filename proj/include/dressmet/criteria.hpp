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

// Span-membership tests deciding whether Heisenberg scaling is reachable:
//   thm1: g outside span_R{1, A_a}                 (dephasing + relaxation, ancilla-assisted)
//   thm2: g outside span_C{1, A_a, A_a A_b}        (general thermal noise, with error correction)
//   hnls: g outside span_C{1, L_i, L_i^dag, L_j^dag L_i}  (fixed Lindblad operators)

#include <string_view>
#include <vector>

#include "dressmet/operators.hpp"

namespace dressmet {

enum class Criterion { Thm1, Thm2, Hnls };

std::string_view to_string(Criterion c);
Criterion criterion_from_string(std::string_view s);

struct CriterionReport {
  Criterion criterion = Criterion::Thm1;
  bool verdict = false;        // true: Heisenberg scaling achievable
  bool marginal = false;       // residual within a factor 10 of the membership tolerance
  double residual_norm = 0.0;  // ||g_perp||_F
  std::size_t span_dim = 0;
  CMatrix g_perp;              // component of g orthogonal to the span
};

CriterionReport thm1_condition(const HermitianOperator& g, const std::vector<HermitianOperator>& couplings,
                               const Tolerances& tol = kDefaultTolerances);

CriterionReport thm2_condition(const HermitianOperator& g, const std::vector<HermitianOperator>& couplings,
                               const Tolerances& tol = kDefaultTolerances);

CriterionReport hnls_condition(const HermitianOperator& g, const std::vector<CMatrix>& lindblads,
                               const Tolerances& tol = kDefaultTolerances);

/// Generators {1, A_a, A_a A_b} (all ordered pairs) of the quadratic span.
std::vector<CMatrix> quadratic_span_generators(const std::vector<HermitianOperator>& couplings);

/// Hermitian real basis of span_C{1, A_a, A_a A_b}: the span is closed under
/// the adjoint, so its Hermitian elements form a real span of the same size.
std::vector<HermitianOperator> quadratic_span_hermitian_generators(const std::vector<HermitianOperator>& couplings);

}  // namespace dressmet
