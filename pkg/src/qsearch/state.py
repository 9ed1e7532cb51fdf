"""Dense statevector register.

Basis index ``k`` is read most-significant-bit first: qubit 0 is the highest
bit. The search register occupies the leading qubits and every workspace qubit
appended later becomes the new least significant bit, so ``|i> (x) |w>`` with a
single workspace qubit lives at index ``2*i + w``.

Gates mutate the state in place and return it.
"""
from __future__ import annotations

import os
from typing import Iterable, Sequence

import numpy as np

DEFAULT_MAX_QUBITS = 24
NORM_TOL = 1e-10
UNITARY_TOL = 1e-10

_INV_SQRT2 = 1.0 / np.sqrt(2.0)


class CapacityError(ValueError):
    """Requested register is wider than the configured limit."""


class InvariantError(RuntimeError):
    """An internal invariant (normalization, non-degenerate marginal) broke."""


def max_qubits() -> int:
    """Register width limit, overridable with ``QSEARCH_MAX_QUBITS``."""
    raw = os.environ.get("QSEARCH_MAX_QUBITS")
    if raw is None:
        return DEFAULT_MAX_QUBITS
    try:
        value = int(raw)
    except ValueError:
        raise CapacityError(f"QSEARCH_MAX_QUBITS must be an integer, got {raw!r}") from None
    if value < 1:
        raise CapacityError("QSEARCH_MAX_QUBITS must be positive")
    return value


def check_width(num_qubits: int) -> None:
    limit = max_qubits()
    if num_qubits > limit:
        raise CapacityError(f"{num_qubits} qubits exceeds the register limit of {limit}")


class StateVector:
    """Complex amplitudes over ``2**num_qubits`` basis states."""

    __slots__ = ("num_qubits", "amplitudes")

    def __init__(self, amplitudes: Sequence[complex] | np.ndarray):
        amps = np.array(amplitudes, dtype=np.complex128).ravel()
        size = amps.size
        if size < 2 or size & (size - 1):
            raise ValueError(f"amplitude count must be a power of two >= 2, got {size}")
        num_qubits = size.bit_length() - 1
        check_width(num_qubits)
        self.num_qubits = num_qubits
        self.amplitudes = amps

    def copy(self) -> StateVector:
        return StateVector(self.amplitudes.copy())

    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def append_qubit(self) -> StateVector:
        """Tensor a fresh ``|0>`` onto the register as the new least significant bit."""
        check_width(self.num_qubits + 1)
        grown = np.zeros(2 * self.amplitudes.size, dtype=np.complex128)
        grown[::2] = self.amplitudes
        self.amplitudes = grown
        self.num_qubits += 1
        return self

    def __len__(self) -> int:
        return self.amplitudes.size

    def __repr__(self) -> str:
        return f"StateVector(num_qubits={self.num_qubits})"


def new_zero(num_qubits: int) -> StateVector:
    if num_qubits < 1:
        raise ValueError("a register needs at least one qubit")
    check_width(num_qubits)
    amps = np.zeros(2**num_qubits, dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(amps)


def _check_qubit(state: StateVector, qubit: int) -> None:
    if not 0 <= qubit < state.num_qubits:
        raise IndexError(f"qubit {qubit} out of range for {state.num_qubits}-qubit register")


def _pair_view(state: StateVector, qubit: int) -> np.ndarray:
    # axis 1 of the view is the bit belonging to `qubit`
    nq = state.num_qubits
    return state.amplitudes.reshape(2**qubit, 2, 2 ** (nq - qubit - 1))


def assert_normalized(state: StateVector) -> None:
    if __debug__:
        total = state.norm_squared()
        if abs(total - 1.0) > NORM_TOL:
            raise InvariantError(f"state norm drifted to {total!r}")


def apply_x(state: StateVector, qubit: int) -> StateVector:
    _check_qubit(state, qubit)
    view = _pair_view(state, qubit)
    view[:] = view[:, ::-1, :].copy()
    assert_normalized(state)
    return state


def apply_hadamard(state: StateVector, qubit: int) -> StateVector:
    _check_qubit(state, qubit)
    view = _pair_view(state, qubit)
    lo = view[:, 0, :].copy()
    hi = view[:, 1, :]
    view[:, 0, :] = (lo + hi) * _INV_SQRT2
    view[:, 1, :] = (lo - hi) * _INV_SQRT2
    assert_normalized(state)
    return state


def apply_hadamard_range(state: StateVector, qubits: Iterable[int]) -> StateVector:
    for qubit in qubits:
        apply_hadamard(state, qubit)
    return state


def apply_controlled_not(state: StateVector, controls: Sequence[int], target: int) -> StateVector:
    """Flip ``target`` on every basis state whose ``controls`` are all 1."""
    _check_qubit(state, target)
    for c in controls:
        _check_qubit(state, c)
    if target in controls or len(set(controls)) != len(controls):
        raise ValueError("controls and target must be distinct qubits")
    tensor = state.amplitudes.reshape((2,) * state.num_qubits)
    sel0: list = [slice(None)] * state.num_qubits
    for c in controls:
        sel0[c] = 1
    sel1 = list(sel0)
    sel0[target], sel1[target] = 0, 1
    sel0, sel1 = tuple(sel0), tuple(sel1)
    flipped = tensor[sel1].copy()
    tensor[sel1] = tensor[sel0]
    tensor[sel0] = flipped
    assert_normalized(state)
    return state


def apply_unitary_dense(state: StateVector, matrix: np.ndarray, qubits: Sequence[int]) -> StateVector:
    """Apply a ``2**m x 2**m`` matrix to the listed qubits (first listed = matrix MSB).

    Meant for small cross-checks; ``m`` is capped at 10.
    """
    qubits = list(qubits)
    m = len(qubits)
    if m == 0 or m > 10:
        raise ValueError("dense unitaries act on between 1 and 10 qubits")
    for q in qubits:
        _check_qubit(state, q)
    if len(set(qubits)) != m:
        raise ValueError("qubits must be distinct")
    matrix = np.asarray(matrix, dtype=np.complex128)
    dim = 2**m
    if matrix.shape != (dim, dim):
        raise ValueError(f"expected a {dim}x{dim} matrix, got {matrix.shape}")
    if not np.allclose(matrix.conj().T @ matrix, np.eye(dim), rtol=0.0, atol=UNITARY_TOL):
        raise ValueError("matrix is not unitary")

    nq = state.num_qubits
    tensor = state.amplitudes.reshape((2,) * nq)
    moved = np.moveaxis(tensor, qubits, list(range(m)))
    out = (matrix @ moved.reshape(dim, -1)).reshape(moved.shape)
    state.amplitudes[:] = np.moveaxis(out, list(range(m)), qubits).reshape(-1)
    assert_normalized(state)
    return state


def marginal_probabilities(state: StateVector, first_n: int) -> np.ndarray:
    """Probability of each prefix on the leading ``first_n`` qubits, workspace summed out."""
    if not 1 <= first_n <= state.num_qubits:
        raise IndexError(f"first_n={first_n} out of range for {state.num_qubits} qubits")
    return state.probabilities().reshape(2**first_n, -1).sum(axis=1)


def sample_index(probs: np.ndarray, uniform: float | np.ndarray) -> int | np.ndarray:
    """Inverse-CDF lookup of one or many uniforms in ``[0, 1)``."""
    cdf = np.cumsum(probs)
    total = cdf[-1]
    if not total > 0.0:
        raise InvariantError("cannot sample from an all-zero distribution")
    idx = np.searchsorted(cdf, np.asarray(uniform) * total, side="right")
    return np.minimum(idx, probs.size - 1)


def measure_first_n(
    state: StateVector, first_n: int, rng: np.random.Generator
) -> tuple[int, StateVector]:
    """Measure the leading ``first_n`` qubits, collapsing the state in place."""
    probs = marginal_probabilities(state, first_n)
    index = int(sample_index(probs, rng.random()))
    rows = state.amplitudes.reshape(2**first_n, -1)
    kept = rows[index].copy()
    rows[:] = 0.0
    rows[index] = kept / np.sqrt(probs[index])
    assert_normalized(state)
    return index, state
