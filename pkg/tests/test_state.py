import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsearch.state import (
    CapacityError,
    InvariantError,
    StateVector,
    apply_controlled_not,
    apply_hadamard,
    apply_hadamard_range,
    apply_unitary_dense,
    apply_x,
    marginal_probabilities,
    measure_first_n,
    new_zero,
)

from conftest import random_state, within_3sigma

X = np.array([[0, 1], [1, 0]])
H = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
S2 = 1 / np.sqrt(2)


def test_new_zero():
    np.testing.assert_array_equal(new_zero(1).amplitudes, [1, 0])
    np.testing.assert_array_equal(new_zero(2).amplitudes, [1, 0, 0, 0])
    assert new_zero(3).norm_squared() == pytest.approx(1.0)


def test_new_zero_capacity(monkeypatch):
    with pytest.raises(CapacityError):
        new_zero(25)
    monkeypatch.setenv("QSEARCH_MAX_QUBITS", "3")
    new_zero(3)
    with pytest.raises(CapacityError):
        new_zero(4)


def test_x_swaps_pair():
    s = StateVector([0.6, 0.8])
    np.testing.assert_allclose(apply_x(s, 0).amplitudes, [0.8, 0.6])


def test_x_on_msb():
    s = apply_x(new_zero(2), 0)
    np.testing.assert_array_equal(s.amplitudes, [0, 0, 1, 0])


def test_hadamard_basis_states():
    np.testing.assert_allclose(apply_hadamard(new_zero(1), 0).amplitudes, [S2, S2])
    np.testing.assert_allclose(apply_hadamard(StateVector([0, 1]), 0).amplitudes, [S2, -S2])


def test_hadamard_range():
    np.testing.assert_allclose(apply_hadamard_range(new_zero(2), range(2)).amplitudes, [0.5] * 4)
    np.testing.assert_allclose(apply_hadamard_range(new_zero(3), range(3)).amplitudes, [8**-0.5] * 8)
    s = new_zero(2)
    np.testing.assert_array_equal(apply_hadamard_range(s, []).amplitudes, [1, 0, 0, 0])


def test_gate_index_errors():
    with pytest.raises(IndexError):
        apply_x(new_zero(2), 2)
    with pytest.raises(IndexError):
        apply_hadamard(new_zero(2), -1)


def test_cnot_single_control():
    s = StateVector([0, 0, 1, 0])  # |10>
    np.testing.assert_array_equal(apply_controlled_not(s, [0], 1).amplitudes, [0, 0, 0, 1])
    s = new_zero(2)
    np.testing.assert_array_equal(apply_controlled_not(s, [0], 1).amplitudes, [1, 0, 0, 0])


def test_cnot_toffoli_matches_enumeration(rng):
    amps = random_state(rng, 3)
    out = apply_controlled_not(StateVector(amps), [0, 1], 2).amplitudes
    # enumerate basis states: bits (c0, c1, t) MSB first
    expected = np.empty_like(amps)
    for k in range(8):
        c0, c1, t = (k >> 2) & 1, (k >> 1) & 1, k & 1
        dest = (c0 << 2) | (c1 << 1) | (t ^ (c0 & c1))
        expected[dest] = amps[k]
    np.testing.assert_allclose(out, expected, atol=1e-15)
    changed = np.flatnonzero(np.abs(out - amps) > 0)
    assert set(changed) <= {6, 7}


def test_cnot_rejects_overlap():
    with pytest.raises(ValueError):
        apply_controlled_not(new_zero(2), [1], 1)


def test_dense_unitary_matches_gates(rng):
    for q in range(3):
        amps = random_state(rng, 3)
        a = apply_x(StateVector(amps), q).amplitudes
        b = apply_unitary_dense(StateVector(amps), X, [q]).amplitudes
        np.testing.assert_allclose(a, b, atol=1e-12)
        a = apply_hadamard(StateVector(amps), q).amplitudes
        b = apply_unitary_dense(StateVector(amps), H, [q]).amplitudes
        np.testing.assert_allclose(a, b, atol=1e-12)


def test_dense_unitary_two_qubit_order(rng):
    cnot = np.eye(4)[[0, 1, 3, 2]]
    amps = random_state(rng, 3)
    a = apply_controlled_not(StateVector(amps), [2], 0).amplitudes
    b = apply_unitary_dense(StateVector(amps), cnot, [2, 0]).amplitudes
    np.testing.assert_allclose(a, b, atol=1e-12)


def test_dense_unitary_identity_and_validation(rng):
    amps = random_state(rng, 2)
    out = apply_unitary_dense(StateVector(amps), np.eye(4), [0, 1]).amplitudes
    np.testing.assert_allclose(out, amps)
    with pytest.raises(ValueError):
        apply_unitary_dense(StateVector(amps), np.array([[1, 1], [0, 1]]), [0])


def test_marginals():
    uniform = apply_hadamard_range(new_zero(2), range(2))
    np.testing.assert_allclose(marginal_probabilities(uniform, 1), [0.5, 0.5])
    s = StateVector(np.array([0.6, 0, 0, 0.8]))
    np.testing.assert_allclose(marginal_probabilities(s, 2), [0.36, 0, 0, 0.64])


def test_measure_deterministic_prefix():
    s = StateVector(np.array([0, 0, 0.6, 0.8, 0, 0, 0, 0]))  # prefix 1 on 2 qubits
    for seed in range(5):
        idx, post = measure_first_n(s.copy(), 2, np.random.default_rng(seed))
        assert idx == 1
        np.testing.assert_allclose(post.amplitudes[2:4], [0.6, 0.8])


def test_measure_reproducible_and_collapses(rng):
    amps = random_state(rng, 4)
    a, post = measure_first_n(StateVector(amps), 2, np.random.default_rng(7))
    b, _ = measure_first_n(StateVector(amps), 2, np.random.default_rng(7))
    assert a == b
    block = post.amplitudes.reshape(4, 4)
    assert np.all(block[np.arange(4) != a] == 0)
    assert post.norm_squared() == pytest.approx(1.0, abs=1e-12)


def test_measure_frequencies():
    amps = np.sqrt(np.array([0.1, 0.2, 0.3, 0.4]))
    rng = np.random.default_rng(3)
    counts = np.zeros(4, int)
    for _ in range(20000):
        idx, _ = measure_first_n(StateVector(amps), 2, rng)
        counts[idx] += 1
    for k, p in enumerate([0.1, 0.2, 0.3, 0.4]):
        assert within_3sigma(counts[k], 20000, p)


def test_measure_zero_state_is_invariant_error():
    s = new_zero(1)
    s.amplitudes[:] = 0
    with pytest.raises(InvariantError):
        measure_first_n(s, 1, np.random.default_rng(0))


@st.composite
def states(draw, max_qubits=5):
    nq = draw(st.integers(1, max_qubits))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_state(np.random.default_rng(seed), nq)


@settings(max_examples=60, deadline=None)
@given(states(), st.data())
def test_involutions_and_norm(amps, data):
    nq = int(np.log2(amps.size))
    q = data.draw(st.integers(0, nq - 1))
    for gate in (apply_x, apply_hadamard):
        s = gate(gate(StateVector(amps), q), q)
        np.testing.assert_allclose(s.amplitudes, amps, atol=1e-12)
        assert abs(gate(StateVector(amps), q).norm_squared() - 1) <= 1e-10
    if nq >= 2:
        others = [k for k in range(nq) if k != q]
        controls = data.draw(st.lists(st.sampled_from(others), min_size=1, unique=True))
        s = apply_controlled_not(apply_controlled_not(StateVector(amps), controls, q), controls, q)
        np.testing.assert_allclose(s.amplitudes, amps, atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(states(max_qubits=4), st.data())
def test_gate_locality(amps, data):
    nq = int(np.log2(amps.size))
    q = data.draw(st.integers(0, nq - 1))
    out = apply_hadamard(StateVector(amps), q).amplitudes
    bit = 1 << (nq - 1 - q)
    for k in range(amps.size):
        if k & bit:
            continue
        lo, hi = amps[k], amps[k | bit]
        np.testing.assert_allclose([out[k], out[k | bit]], H @ [lo, hi], atol=1e-12)
