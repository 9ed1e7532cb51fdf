"""Executable search circuits on the dense simulator."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .oracle import CountingOracle, apply_bit_oracle, apply_phase_oracle
from .state import (
    StateVector,
    apply_hadamard,
    apply_hadamard_range,
    assert_normalized,
    check_width,
    marginal_probabilities,
    measure_first_n,
    new_zero,
    sample_index,
)

BRANCHES = ("younes-once", "younes-iterated", "grover", "hybrid-fallback")
_SUBSPACE_TOL = 1e-12


@dataclass
class PreparedSearchState:
    state: StateVector
    n: int
    q_applied: int
    oracle: CountingOracle
    algorithm: str

    def marginal(self) -> np.ndarray:
        return marginal_probabilities(self.state, self.n)


@dataclass(frozen=True)
class RunResult:
    found_index: int
    is_solution: int
    oracle_calls: int
    branch: str
    q_used: int
    seed: int | None = None
    checks: int = 0


def diffusion(state: StateVector, over_qubits: int) -> StateVector:
    """Inversion about the mean over the leading ``over_qubits`` qubits.

    With ``over_qubits < num_qubits`` the trailing qubits must all be ``|0>``;
    only the ``2**over_qubits`` populated amplitudes are reflected.
    """
    m = over_qubits
    if not 1 <= m <= state.num_qubits:
        raise ValueError(f"cannot diffuse over {m} qubits of a {state.num_qubits}-qubit register")
    block = state.amplitudes.reshape(2**m, -1)
    if block.shape[1] > 1 and np.max(np.abs(block[:, 1:]), initial=0.0) > _SUBSPACE_TOL:
        raise ValueError("diffusion over a prefix needs the remaining qubits in |0>")
    col = block[:, 0]
    col[:] = 2.0 * col.mean() - col
    assert_normalized(state)
    return state


def younes_once(oracle: CountingOracle) -> PreparedSearchState:
    n = oracle.spec.n
    state = new_zero(n + 1)
    apply_hadamard_range(state, range(n))
    apply_bit_oracle(state, oracle, n)
    apply_hadamard(state, n)
    diffusion(state, n + 1)
    return PreparedSearchState(state, n, 1, oracle, "younes-once")


def younes_iterated(oracle: CountingOracle, q: int) -> PreparedSearchState:
    """``q`` rounds, each on a freshly appended workspace qubit."""
    if q < 1:
        raise ValueError("the iterated search needs q >= 1")
    n = oracle.spec.n
    check_width(n + q)
    state = new_zero(n)
    apply_hadamard_range(state, range(n))
    for _ in range(q):
        state.append_qubit()
        work = state.num_qubits - 1
        apply_bit_oracle(state, oracle, work)
        apply_hadamard(state, work)
        diffusion(state, state.num_qubits)
    return PreparedSearchState(state, n, q, oracle, "younes-iterated")


def grover(oracle: CountingOracle, q: int) -> PreparedSearchState:
    if q < 0:
        raise ValueError("q must be non-negative")
    n = oracle.spec.n
    state = new_zero(n)
    apply_hadamard_range(state, range(n))
    for _ in range(q):
        apply_phase_oracle(state, oracle)
        diffusion(state, n)
    return PreparedSearchState(state, n, q, oracle, "grover")


def success_probability(prepared: PreparedSearchState) -> float:
    rows = prepared.oracle.spec.marked_array
    if rows.size == 0:
        return 0.0
    return float(prepared.marginal()[rows].sum())


def run_and_verify(prepared: PreparedSearchState, rng: np.random.Generator) -> RunResult:
    """Measure the search register (collapsing the state) and check the outcome."""
    index, _ = measure_first_n(prepared.state, prepared.n, rng)
    ok = prepared.oracle.check(index)
    return RunResult(
        found_index=index,
        is_solution=ok,
        oracle_calls=prepared.oracle.calls,
        branch=prepared.algorithm,
        q_used=prepared.q_applied,
        checks=prepared.oracle.checks,
    )


def shot_uniforms(seed: int, shots: int) -> np.ndarray:
    """One uniform per shot from a counter-based stream; shot ``i`` always gets element ``i``."""
    return np.random.Generator(np.random.Philox(key=seed)).random(shots)


def sample_shots(prepared: PreparedSearchState, shots: int, seed: int) -> np.ndarray:
    """Measurement outcomes of ``shots`` independent repetitions of the same circuit.

    The circuit is deterministic, so each repetition measures an identical
    pre-measurement state; only the per-shot random draw differs.
    """
    return np.asarray(sample_index(prepared.marginal(), shot_uniforms(seed, shots)))


def count_solutions(spec_marked: np.ndarray, indices: np.ndarray) -> int:
    return int(np.isin(indices, spec_marked).sum())

