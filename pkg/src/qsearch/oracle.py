"""Search predicates over ``{0, ..., 2**n - 1}`` and their quantum oracles.

A predicate is stored extensionally as the sorted tuple of marked indices.
The marked-set text grammar accepted by :func:`parse_marked_spec`::

    list:<d>,<d>,...        explicit decimal indices
    range:<a>-<b>           a..b inclusive
    first:<M>               0..M-1
    count:<M>:seed:<S>      M distinct indices drawn uniformly with seed S
    file:<path>             one index per line, '#' starts a comment
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable

import numpy as np

from .state import StateVector, assert_normalized, check_width


class MarkedSpecError(ValueError):
    """Malformed marked-set text. ``position`` is the 0-based offending column."""

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class OracleSpec:
    n: int
    marked: tuple[int, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("search register needs n >= 1")
        check_width(self.n)
        marked = tuple(int(i) for i in self.marked)
        if any(b <= a for a, b in zip(marked, marked[1:])):
            raise ValueError("marked indices must be strictly increasing")
        if marked and not (0 <= marked[0] and marked[-1] < 2**self.n):
            raise IndexError(f"marked index out of range for n={self.n}")
        object.__setattr__(self, "marked", marked)

    @classmethod
    def from_indices(cls, n: int, indices: Iterable[int]) -> OracleSpec:
        indices = list(indices)
        if len(set(indices)) != len(indices):
            raise ValueError("duplicate marked index")
        return cls(n, tuple(sorted(indices)))

    @property
    def N(self) -> int:
        return 2**self.n

    @property
    def M(self) -> int:
        return len(self.marked)

    @cached_property
    def marked_array(self) -> np.ndarray:
        return np.asarray(self.marked, dtype=np.intp)

    @cached_property
    def _marked_set(self) -> frozenset[int]:
        return frozenset(self.marked)

    def __contains__(self, i: int) -> bool:
        return i in self._marked_set


def evaluate(spec: OracleSpec, i: int) -> int:
    if not 0 <= i < spec.N:
        raise IndexError(f"index {i} outside [0, {spec.N})")
    return int(i in spec)


@dataclass
class CountingOracle:
    """Oracle wrapper for one search run.

    ``calls`` counts superposed applications; ``checks`` counts classical
    evaluations used to verify measured candidates.
    """

    spec: OracleSpec
    calls: int = field(default=0)
    checks: int = field(default=0)

    @property
    def n(self) -> int:
        return self.spec.n

    def check(self, i: int) -> int:
        self.checks += 1
        return evaluate(self.spec, i)


def apply_bit_oracle(state: StateVector, oracle: CountingOracle, target: int) -> StateVector:
    """XOR f(prefix) into the workspace qubit ``target``."""
    n = oracle.spec.n
    nq = state.num_qubits
    if not n <= target < nq:
        raise ValueError(f"target {target} must be a workspace qubit in [{n}, {nq})")
    rows = oracle.spec.marked_array
    if rows.size:
        view = state.amplitudes.reshape(2**n, 2 ** (target - n), 2, 2 ** (nq - target - 1))
        zero = view[rows, :, 0, :]
        view[rows, :, 0, :] = view[rows, :, 1, :]
        view[rows, :, 1, :] = zero
    oracle.calls += 1
    assert_normalized(state)
    return state


def apply_phase_oracle(state: StateVector, oracle: CountingOracle) -> StateVector:
    """Negate every amplitude whose search-register prefix is marked."""
    n = oracle.spec.n
    if state.num_qubits < n:
        raise ValueError("state is narrower than the search register")
    rows = oracle.spec.marked_array
    if rows.size:
        state.amplitudes.reshape(2**n, -1)[rows] *= -1.0
    oracle.calls += 1
    assert_normalized(state)
    return state


def random_oracle(n: int, M: int, seed: int) -> OracleSpec:
    N = 2**n
    if not 0 <= M <= N:
        raise ValueError(f"cannot mark {M} of {N} items")
    rng = np.random.default_rng(seed)
    picked = rng.choice(N, size=M, replace=False)
    return OracleSpec(n, tuple(sorted(int(i) for i in picked)))


_INT = re.compile(r"\d+")


def _int_at(text: str, pos: int) -> tuple[int, int]:
    m = _INT.match(text, pos)
    if m is None:
        raise MarkedSpecError("expected a decimal integer", pos)
    return int(m.group()), m.end()


def _expect(text: str, pos: int, literal: str) -> int:
    if not text.startswith(literal, pos):
        raise MarkedSpecError(f"expected {literal!r}", pos)
    return pos + len(literal)


def _expect_end(text: str, pos: int) -> None:
    if pos != len(text):
        raise MarkedSpecError("unexpected trailing text", pos)


def _build(n: int, indices: list[int], positions: list[int]) -> OracleSpec:
    N = 2**n
    seen: set[int] = set()
    for i, pos in zip(indices, positions):
        if i >= N:
            raise IndexError(f"index {i} at position {pos} is outside [0, {N})")
        if i in seen:
            raise MarkedSpecError(f"duplicate index {i}", pos)
        seen.add(i)
    return OracleSpec(n, tuple(sorted(indices)))


def _parse_file(path: str, n: int) -> OracleSpec:
    indices, lines = [], []
    for lineno, line in enumerate(Path(path).read_text().split("\n"), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if not body.isdigit():
            raise MarkedSpecError(f"{path}:{lineno}: expected one decimal index per line", 0)
        indices.append(int(body))
        lines.append(lineno)
    return _build(n, indices, lines)


def parse_marked_spec(text: str, n: int) -> OracleSpec:
    if not text:
        raise MarkedSpecError("empty marked-set spec", 0)
    kind, sep, _ = text.partition(":")
    if not sep:
        raise MarkedSpecError("expected '<kind>:'", len(text))
    pos = len(kind) + 1

    if kind == "list":
        indices, positions = [], []
        while True:
            positions.append(pos)
            value, pos = _int_at(text, pos)
            indices.append(value)
            if pos == len(text):
                break
            pos = _expect(text, pos, ",")
        return _build(n, indices, positions)

    if kind == "range":
        start, pos = _int_at(text, pos)
        hi_pos = _expect(text, pos, "-")
        stop, pos = _int_at(text, hi_pos)
        _expect_end(text, pos)
        if stop < start:
            raise MarkedSpecError("range end precedes start", hi_pos)
        if stop >= 2**n:
            raise IndexError(f"range end {stop} is outside [0, {2**n})")
        return OracleSpec(n, tuple(range(start, stop + 1)))

    if kind == "first":
        count, end = _int_at(text, pos)
        _expect_end(text, end)
        if count > 2**n:
            raise IndexError(f"cannot take the first {count} of {2**n} items")
        return OracleSpec(n, tuple(range(count)))

    if kind == "count":
        count, pos = _int_at(text, pos)
        pos = _expect(text, pos, ":seed:")
        seed, end = _int_at(text, pos)
        _expect_end(text, end)
        if count > 2**n:
            raise IndexError(f"cannot mark {count} of {2**n} items")
        return random_oracle(n, count, seed)

    if kind == "file":
        return _parse_file(text[pos:], n)

    raise MarkedSpecError(f"unknown spec kind {kind!r}", 0)
