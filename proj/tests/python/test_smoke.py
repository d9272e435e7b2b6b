import math

import numpy as np
import pytest

import qturn


def test_spin_operators_shape_and_algebra():
    for rep in ("standard", "adjoint"):
        for axis in ("x", "y", "z"):
            op = qturn.spin_operator(axis, rep)
            assert op.shape == (3, 3)
            assert np.allclose(op, op.conj().T)  # Hermitian
        assert qturn.algebra_report(rep) < 1e-14
    with pytest.raises(ValueError):
        qturn.spin_operator("q")


def test_gate_matrix_unitary_and_embed():
    g = qturn.gate_matrix((1, 0, 0), 0.37)
    assert g.shape == (9, 9)
    assert np.allclose(g @ g.conj().T, np.eye(9), atol=1e-13)
    big = qturn.embed(g, 0, 3)
    assert big.shape == (27, 27)
    xy = qturn.xy_pair_gate(0.37)
    assert np.allclose(xy @ xy.conj().T, np.eye(9), atol=1e-13)
    # the xy pair generator is not the weighted (1,1,0) generator
    assert not np.allclose(xy, qturn.gate_matrix((1, 1, 0), 0.37), atol=1e-6)


def test_turnover_residual_and_negative_control():
    assert qturn.turnover_residual((1, -1, 0), 0.3, -0.7, 1.1, 0.4) < 1e-12
    assert qturn.turnover_residual((1, -1, 0), 0.3, -0.7, 1.1, 0.4,
                                   eps_shift=0.1) > 1e-3


def test_qubit_subspace_blocks():
    perm, sizes = qturn.qubit_subspace_blocks()
    assert sorted(perm) == list(range(27))
    assert sizes == [1, 2, 2, 4, 2, 4, 4, 8]


def test_circuit_roundtrip_and_merge():
    c = qturn.Circuit(3, [qturn.Gate("x", 0, 0.2), qturn.Gate("x", 0, 0.3)])
    merged = qturn.merge_pass(c)
    assert len(merged) == 1
    assert merged.gates[0].angle == pytest.approx(0.5)
    text = qturn.circuit_to_json(c)
    back = qturn.circuit_from_json(text)
    assert len(back) == 2 and back.n == 3
    u1 = qturn.circuit_unitary(c)
    u2 = qturn.circuit_unitary(back)
    assert np.allclose(u1, u2)


def test_rewrite_turnover_preserves_unitary():
    c = qturn.Circuit(3, [qturn.Gate("y", 0, 0.4), qturn.Gate("y", 1, 0.9),
                          qturn.Gate("y", 0, -0.2)])
    r = qturn.rewrite_turnover(c, 0, "ltor")
    assert [g.site for g in r.gates] == [1, 0, 1]
    assert np.allclose(qturn.circuit_unitary(c), qturn.circuit_unitary(r),
                       atol=1e-12)


def test_infidelity_and_minimize():
    eye = np.eye(9, dtype=complex)
    assert qturn.infidelity(eye, eye) == 0.0
    assert qturn.lower_bound(0.1, 2) == pytest.approx(0.19)

    res = qturn.minimize(lambda p: float((p[0] - 1.0) ** 2 + p[1] ** 2),
                         np.zeros(2), restarts=2, seed=5)
    assert res.best_infidelity < 1e-10
    assert res.best_params[0] == pytest.approx(1.0, abs=1e-4)
    assert len(res.restart_infidelities) == 2


def test_trotter_surface():
    assert qturn.theta_step(1.0, 5.0, 200) == pytest.approx(-0.025)
    assert qturn.param_count("T3") == 2
    wl = qturn.wl_circuit("T2", -0.025)
    assert len(wl) == 4
    full = qturn.trotter_circuit("T2", -0.025, 7)
    assert len(full) == 28

    # the reference rearrangement commutes exactly
    theta = -0.31
    ul = qturn.circuit_unitary(qturn.wl_circuit("T1", theta))
    ur = qturn.circuit_unitary(qturn.wr_circuit("TREF", np.full(4, theta)))
    assert np.allclose(ul, ur, atol=1e-12)

    res = qturn.optimize_reflection("TREF", theta, 1, restarts=1)
    assert res.best_infidelity < 1e-12


def test_compress_counts():
    theta = qturn.theta_step(1.0, 5.0, 10)
    circ, rep = qturn.compress("T1", theta, 10, 1, np.full(4, theta))
    assert rep.original_gate_count == 40
    assert rep.compressed_gate_count == 31  # 3n + 1 at n = 10
    assert rep.compressed_gate_count == len(circ)
    assert rep.substitutions_performed == 5
    assert 40 - rep.compressed_gate_count == qturn.predicted_reduced_gates(
        "T1", 1, 10)

    # the commutation-exact rearrangement substitutes losslessly
    _, ref = qturn.compress("TREF", theta, 10, 1, np.full(4, theta))
    assert ref.max_unitary_deviation < 1e-12


def test_dynamics_surface():
    h = qturn.hamiltonian_xy(1.0)
    assert h.shape == (27, 27)
    u = qturn.exact_propagator(h, 0.0)
    assert np.allclose(u, np.eye(27))
    assert qturn.return_probability(u) == pytest.approx(1.0)
    assert qturn.RETURN_STATE == 20

    ts = qturn.time_grid(0.0, 5.0, 0.025)
    assert len(ts) == 200 and ts[0] == 0.0 and ts[-1] == pytest.approx(4.975)

    # the trotter curve reads the state after floor(t / dt) steps, so
    # compare against the exact curve at those snapped times
    snapped = [math.floor(t / 0.025) * 0.025 for t in ts]
    exact = qturn.exact_return_curve(h, snapped)
    trot = qturn.trotter_return_curve("T2", 1.0, 5.0, 200, ts)
    assert trot[0] == 1.0
    assert max(abs(a - b) for a, b in zip(exact, trot)) < 2e-3
