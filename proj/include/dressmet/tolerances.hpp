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

namespace dressmet {

// Numerical thresholds shared by every module. Each operation takes a
// Tolerances argument defaulting to kDefaultTolerances.
struct Tolerances {
  double hermitian = 1e-12;        // max-abs deviation from the adjoint
  double normalization = 1e-12;    // |<psi|psi> - 1|
  double orthogonality = 1e-12;    // |<psi0|psi1>|
  double span_drop = 1e-10;        // Gram-Schmidt residual below which a generator is dependent
  double orthonormality = 1e-10;   // basis check tr(B_i^dag B_j) = delta_ij
  double membership = 1e-9;        // Frobenius residual deciding span membership
  double split_trace = 1e-10;      // |tr g_perp| accepted by the positive/negative split
  double zero_eigenvalue = 1e-12;  // relative cutoff for treating an eigenvalue as zero
  double reconstruction = 1e-10;   // decomposition/reconstruction checks
  double knill_laflamme = 1e-9;    // Frobenius deviation from proportionality
  double eigen_residual = 1e-10;   // ||H psi - lambda psi||
  double trace_drift = 1e-6;       // integrator hard failure threshold
  double positivity = 1e-6;        // integrator hard failure threshold on min eigenvalue
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace dressmet
