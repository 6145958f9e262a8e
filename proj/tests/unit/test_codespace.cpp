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

#include <gtest/gtest.h>

#include "dressmet/codespace.hpp"
#include "dressmet/errors.hpp"
#include "dressmet/nv.hpp"
#include "fixtures.hpp"

using namespace dressmet;
using namespace fixtures;

namespace {

StateVector sv(const CVector& v) { return StateVector(v); }

CMatrix pauli_x_on(int qubit) {
  CMatrix out = CMatrix::Identity(1, 1);
  for (int q = 0; q < 3; ++q) out = tensor(out, q == qubit ? pauli_x() : CMatrix(CMatrix::Identity(2, 2)));
  return out;
}

}  // namespace

TEST(Purify, PureOrthogonal) {
  const CodeSpace c = purify_pair(diag({1, 0}), diag({0, 1}));
  EXPECT_EQ(c.sys_dim(), 2);
  EXPECT_NEAR(std::abs(c.psi0().amplitudes().dot(c.psi1().amplitudes())), 0.0, 1e-14);
  EXPECT_NEAR((c.reduced_state(0) - diag({1, 0})).norm(), 0.0, 1e-13);
  EXPECT_NEAR((c.reduced_state(1) - diag({0, 1})).norm(), 0.0, 1e-13);
}

TEST(Purify, NvPair) {
  const CodeSpace c = purify_pair(diag({0, 1, 0}), diag({0.5, 0, 0.5}));
  EXPECT_GE(c.anc_dim(), 2);
  EXPECT_NEAR((c.reduced_state(0) - diag({0, 1, 0})).norm(), 0.0, 1e-13);
  EXPECT_NEAR((c.reduced_state(1) - diag({0.5, 0, 0.5})).norm(), 0.0, 1e-13);
}

TEST(Purify, EqualMixedStatesStillPurify) {
  const CMatrix half = 0.5 * CMatrix::Identity(2, 2);
  const CodeSpace c = purify_pair(half, half);
  EXPECT_NEAR(std::abs(c.psi0().amplitudes().dot(c.psi1().amplitudes())), 0.0, 1e-14);
  EXPECT_NEAR((c.reduced_state(0) - half).norm(), 0.0, 1e-13);
  // Relaxation is suppressed by the ancilla supports alone.
  const ConditionReport r = check_conditions(c, H(pauli_z()), {H(pauli_x()), H(pauli_y()), H(pauli_z())});
  EXPECT_LT(r.relaxation_violation, 1e-13);
}

TEST(Purify, RejectsNonStates) {
  EXPECT_THROW(purify_pair(diag({1, 1}), diag({0, 1})), DomainError);
  EXPECT_THROW(purify_pair(diag({1.5, -0.5}), diag({0, 1})), DomainError);
}

TEST(Conditions, NvBareCodeUnderDephasing) {
  const ConditionReport r = check_conditions(nv_bare_code(), H(sz1() * sz1()), {H(sz1())});
  EXPECT_LT(r.dephasing_violation, 1e-14);
  EXPECT_LT(r.relaxation_violation, 1e-14);
  EXPECT_NEAR(r.signal, 1.0, 1e-14);
}

TEST(Conditions, NvBareCodeFailsRelaxation) {
  const ConditionReport r = check_conditions(nv_bare_code(), H(sz1() * sz1()), spin1_couplings());
  EXPECT_GT(r.relaxation_violation, 0.1);
  EXPECT_FALSE(r.passes(1e-9));
}

TEST(Conditions, NvAncillaCodePassesLinearConditions) {
  const ConditionReport r = check_conditions(nv_ancilla_code(), H(sz1() * sz1()), spin1_couplings());
  EXPECT_LT(r.dephasing_violation, 1e-14);
  EXPECT_LT(r.relaxation_violation, 1e-14);
  EXPECT_TRUE(r.passes(1e-12));
  EXPECT_NEAR(r.signal, 1.0, 1e-14);
}

TEST(Conditions, NoCouplingsNoViolation) {
  CounterRng rng(9, 1);
  const CodeSpace c = purify_pair(random_density(rng, 3), random_density(rng, 3));
  const ConditionReport r = check_conditions(c, H(sz1()), {});
  EXPECT_EQ(r.dephasing_violation, 0.0);
  EXPECT_EQ(r.relaxation_violation, 0.0);
  EXPECT_EQ(r.kl_violation, 0.0);
}

TEST(EffectiveGenerator, Examples) {
  const EffectiveGenerator nv = effective_generator(nv_ancilla_code(), H(sz1() * sz1()));
  EXPECT_NEAR(nv.delta, 1.0, 1e-14);
  EXPECT_NEAR(nv.var, 0.25, 1e-14);

  EXPECT_NEAR(effective_generator(nv_ancilla_code(), HermitianOperator::identity(3)).delta, 0.0, 1e-14);

  const CodeSpace qubit(StateVector::basis(2, 0), StateVector::basis(2, 1), 2);
  const EffectiveGenerator q = effective_generator(qubit, H(pauli_z()));
  EXPECT_NEAR(q.delta, -2.0, 1e-14);
  EXPECT_NEAR(q.var, 1.0, 1e-14);
}

TEST(Control, ZeroFreeHamiltonian) {
  const CodeSpace c(StateVector::basis(3, 0), StateVector::basis(3, 1), 3);
  const HermitianOperator hc = control_hamiltonian(c, HermitianOperator::zero(3), {-1.0, 1.0, 0.0});
  EXPECT_NEAR((hc.matrix() - diag({-1, 1, 0})).norm(), 0.0, 1e-14);
}

TEST(Control, NvCodeStatesAreEigenstates) {
  const CodeSpace c = nv_bare_code();
  const HermitianOperator h_free = H(sz1() * sz1());
  const HermitianOperator hc = control_hamiltonian(c, h_free, {0.0, 0.3, 10.0});
  const CMatrix total = h_free.matrix() + hc.matrix();
  EXPECT_LT((total * c.psi0().amplitudes()).norm(), 1e-12);
  EXPECT_LT((total * c.psi1().amplitudes() - 0.3 * c.psi1().amplitudes()).norm(), 1e-12);
}

TEST(Control, NonCommutingFreeHamiltonianIsExact) {
  const CodeSpace c = nv_bare_code();
  const HermitianOperator h_free = H(sx1() + 0.4 * sz1());
  const CMatrix total = h_free.matrix() + control_hamiltonian(c, h_free).matrix();
  EXPECT_LT((total * c.psi1().amplitudes() - c.psi1().amplitudes()).norm(), 1e-12);
  EXPECT_THROW(control_hamiltonian(c, h_free, {1.0, 1.0, 10.0}), DomainError);
}

TEST(Dressing, ProjectorOnComplement) {
  const CodeSpace c(StateVector::basis(3, 0), StateVector::basis(3, 1), 3);
  const Dressing dr = two_level_dressing(c, 5.0, {H(sx1())});
  EXPECT_NEAR((dr.h_c.matrix() - diag({0, 0, 5})).norm(), 0.0, 1e-14);
  // S_x maps |1> <-> |2>, which crosses the blocks; the within-block part is
  // |0><1| + |1><0| over sqrt(2).
  const Transition* t0 = dr.lindblads.find(0.0);
  ASSERT_NE(t0, nullptr);
  CMatrix expect = CMatrix::Zero(3, 3);
  expect(0, 1) = expect(1, 0) = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR((t0->ops[0] - expect).norm(), 0.0, 1e-14);
  const Transition* down = dr.lindblads.find(5.0);
  ASSERT_NE(down, nullptr);
  EXPECT_NEAR(std::abs(down->ops[0](1, 2)), 1.0 / std::sqrt(2.0), 1e-14);
}

TEST(KnillLaflamme, EmptyIsOk) {
  const KnillLaflamme kl = verify_knill_laflamme(nv_bare_code(), {});
  EXPECT_TRUE(kl.ok);
  EXPECT_EQ(kl.violation, 0.0);
}

TEST(KnillLaflamme, BitFlipCode) {
  CVector zero = CVector::Zero(8), one = CVector::Zero(8);
  zero[0] = 1.0;
  one[7] = 1.0;
  const CodeSpace c(sv(zero), sv(one), 8);
  const KnillLaflamme kl = verify_knill_laflamme(c, {pauli_x_on(0)});
  EXPECT_TRUE(kl.ok);
  EXPECT_LT(kl.violation, 1e-14);
  // Z on a qubit distinguishes the code words up to sign: a detectable error
  // but not of KL form alone.
  CMatrix z0 = tensor(tensor(pauli_z(), CMatrix(CMatrix::Identity(2, 2))), CMatrix(CMatrix::Identity(2, 2)));
  EXPECT_FALSE(verify_knill_laflamme(c, {z0}).ok);
}

TEST(KnillLaflamme, NvAncillaCodeUnderDressing) {
  const CodeSpace c = nv_ancilla_code();
  std::vector<HermitianOperator> lifted;
  for (const auto& a : spin1_couplings()) lifted.push_back(H(c.lift_system(a.matrix())));
  const Dressing dr = two_level_dressing(c, 1.0, lifted);
  const KnillLaflamme kl = verify_knill_laflamme(c, dr.lindblads.flatten(1e-14));
  EXPECT_FALSE(kl.ok);
  EXPECT_GT(kl.violation, 1e-3);
}

TEST(FromSdp, NvOptimizer) {
  // |psi+><psi+| - |0><0| has the right split.
  const CMatrix gt = psi_plus() * psi_plus().adjoint() - ket(3, 1) * ket(3, 1).adjoint();
  const CodeSpace c = code_from_sdp(H(gt));
  EXPECT_NEAR((c.reduced_state(1) - c.reduced_state(0) - gt).norm(), 0.0, 1e-12);
  EXPECT_THROW(code_from_sdp(H(diag({1, 0, 0}))), DomainError);
}

TEST(Penalty, ZeroForDecoherenceFreePair) {
  CMatrix v(3, 2);
  v.col(0) = ket(3, 1);
  v.col(1) = psi_minus();
  EXPECT_LT(compression_penalty(v, {sz1()}), 1e-28);
  EXPECT_GT(compression_penalty(v, {sx1(), sy1(), sz1()}), 0.5);
}

TEST(NoGo, SpinOneFloor) {
  const NoGoResult r = no_go_search(spin1_couplings(), 3, 200, 0, 1);
  EXPECT_EQ(r.restarts, 200);
  EXPECT_EQ(r.below_1e10, 0);
  // Regression value: the Frobenius penalty never falls below 2.
  EXPECT_NEAR(r.min_penalty, 2.0, 1e-8);
}

TEST(NoGo, DephasingOnlyFeasible) {
  EXPECT_LT(no_go_search({H(sz1())}, 3, 20, 1).min_penalty, 1e-10);
}

TEST(NoGo, AncillaFeasible) {
  std::vector<HermitianOperator> lifted;
  for (const auto& a : spin1_couplings()) lifted.push_back(H(tensor(a.matrix(), CMatrix(CMatrix::Identity(2, 2)))));
  EXPECT_LT(no_go_search(lifted, 6, 40, 2).min_penalty, 1e-10);
}

TEST(NoGo, ThreadCountIndependent) {
  const NoGoResult a = no_go_search(spin1_couplings(), 3, 16, 7, 1);
  const NoGoResult b = no_go_search(spin1_couplings(), 3, 16, 7, 4);
  EXPECT_EQ(a.min_penalty, b.min_penalty);
  EXPECT_EQ((a.best - b.best).norm(), 0.0);
}
