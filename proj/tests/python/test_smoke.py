# Copyright 2026 The dressmet Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import numpy as np
import pytest

import dressmet as dm

SX, SY, SZ = dm.spin_matrices(2)
SZ2 = SZ @ SZ


def test_spin_one_algebra():
    # [S_x, S_y] = i S_z and S^2 = s(s+1) = 2
    assert np.allclose(SX @ SY - SY @ SX, 1j * SZ)
    assert np.allclose(SX @ SX + SY @ SY + SZ2, 2 * np.eye(3))


def test_nv_criteria():
    assert dm.thm1_condition(SZ2, [SX, SY, SZ]).verdict
    r = dm.thm2_condition(SZ2, [SX, SY, SZ])
    assert not r.verdict
    assert r.residual_norm < 1e-12


def test_non_hermitian_rejected():
    with pytest.raises(dm.DomainError):
        dm.thm1_condition(np.array([[0, 1], [0, 0]], dtype=complex), [np.eye(2, dtype=complex)])
    with pytest.raises(ValueError):
        dm.thm1_condition(SZ2, [np.eye(2, dtype=complex)])


def test_sdp_nv_dephasing_optimum():
    sol = dm.solve_primal(SZ2, [SX, SY, SZ])
    assert sol.certified
    assert abs(sol.primal_value - 1.0) < 1e-6
    assert sol.primal_value <= sol.dual_value + 1e-9
    assert dm.constructive_bound(SZ2, [SX, SY, SZ]) <= sol.primal_value + 1e-9
    code = dm.code_from_sdp(sol.g_tilde)
    rep = dm.check_conditions(code, SZ2, [SX, SY, SZ])
    assert rep.passes(1e-6)
    assert abs(rep.signal - 1.0) < 1e-6


def test_span_member_has_zero_value():
    sol = dm.solve_primal(SZ, [SX, SY, SZ])
    assert abs(sol.primal_value) < 1e-6


def test_unprotected_dephasing_oracle():
    # (|+1> + |-1>)/sqrt(2) under L = S_z at unit rate: |rho_01| = e^{-2t}/2
    sp = dm.flat_spectrum("dephasing", 1.0)
    gen = dm.LindbladGenerator(SZ2, [SZ], sp)
    psi = np.array([1, 0, 1], dtype=complex) / math.sqrt(2)
    traj = dm.evolve(np.outer(psi, psi.conj()), gen, 1.5, dt=1e-3, record_stride=500)
    for t, rho in zip(traj.times, traj.states):
        assert abs(abs(rho[0, 2]) - 0.5 * math.exp(-2 * t)) < 1e-8
    assert traj.max_trace_drift < 1e-12


def test_protected_qfi_is_t_squared():
    sp = dm.flat_spectrum("dephasing", 1.0)
    prot = dm.nv_protected_model(sp)
    unprot = dm.nv_unprotected_model(sp)
    rows = dm.scaling_sweep(prot, unprot, [1.0, 2.0, 4.0])
    for r in rows:
        assert r.qfi_protected == pytest.approx(r.t ** 2, rel=1e-6)
        assert r.coherence == pytest.approx(0.5, abs=1e-8)
    slope = dm.loglog_slope([r.t for r in rows], [r.qfi_protected for r in rows])
    assert slope == pytest.approx(2.0, abs=1e-6)


def test_verdict_table_pattern():
    cells = [
        dm.nv_verdict("dephasing"),
        dm.nv_verdict("relaxation", restarts=20, seed=1),
        dm.nv_verdict("relaxation", ancilla=True),
        dm.nv_verdict("thermal"),
    ]
    assert [c.achievable for c in cells] == [True, False, True, False]
    assert "✓" in dm.nv_verdict_markdown(restarts=5)


def test_no_go_is_seed_deterministic():
    a = dm.no_go_search([SX, SY, SZ], restarts=8, seed=42)
    b = dm.no_go_search([SX, SY, SZ], restarts=8, seed=42, jobs=2)
    assert a.min_penalty == b.min_penalty
    assert a.min_penalty > 1.0


def test_version():
    assert dm.__version__.count(".") == 2
