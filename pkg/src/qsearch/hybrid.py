"""Hybrid search engine: pick the algorithm that suits the number of matches.

With ``M`` known, small ``M`` (below ``N/8``) goes to Grover's iteration and
everything else to the single-pass workspace algorithm. With ``M`` unknown a
short iterated run is tried first, then a randomized Grover schedule with a
growing iteration ceiling takes over.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .algorithms import PreparedSearchState, RunResult, grover, younes_iterated, younes_once
from .oracle import CountingOracle
from .state import sample_index


class PolicyError(ValueError):
    """The requested dispatch has nothing to search for."""


@dataclass(frozen=True)
class HybridPolicy:
    known_m: int | None = None
    younes_q: int = 3
    verify_retries: int = 3
    fallback_growth: float = 6 / 5
    fallback_cap_calls: int | None = None

    def __post_init__(self):
        if self.younes_q < 1:
            raise ValueError("younes_q must be >= 1")
        if self.verify_retries < 1:
            raise ValueError("verify_retries must be >= 1")
        if not self.fallback_growth > 1:
            raise ValueError("fallback_growth must exceed 1")
        if self.known_m is not None and self.known_m < 1:
            raise PolicyError("known_m must be >= 1; with no solutions there is nothing to find")

    def cap_calls(self, N: int) -> int:
        if self.fallback_cap_calls is not None:
            return self.fallback_cap_calls
        return math.ceil(9 * math.sqrt(N))


def dispatch_known(N: int, M: int) -> str:
    if M == 0:
        raise PolicyError("M = 0: no solutions to find")
    if not 1 <= M <= N:
        raise ValueError(f"M must lie in [1, {N}], got {M}")
    # M < N/8 without floating point
    return "grover" if 8 * M < N else "younes-once"


def grover_iteration_count(N: int, M: int) -> int:
    if not 1 <= M <= N:
        raise ValueError(f"M must lie in [1, {N}], got {M}")
    return max(0, math.floor(math.pi / 4 * math.sqrt(N / M) - 0.5))


@dataclass
class _Tally:
    oracle: CountingOracle
    # deterministic circuits are prepared once per (algorithm, q) and re-measured
    cache: dict = field(default_factory=dict)

    def measure(self, build: Callable[[CountingOracle], PreparedSearchState], key, calls: int, rng) -> tuple[int, int]:
        key = (self.oracle.spec, *key)
        probs = self.cache.get(key)
        if probs is None:
            probs = build(CountingOracle(self.oracle.spec)).marginal()
            self.cache[key] = probs
        self.oracle.calls += calls
        index = int(sample_index(probs, rng.random()))
        return index, self.oracle.check(index)


def search(
    oracle: CountingOracle,
    policy: HybridPolicy,
    rng: np.random.Generator | int | None,
    cache: dict | None = None,
) -> RunResult:
    """Run one hybrid search, verifying every measured candidate classically.

    ``oracle.calls`` accumulates superposed applications and ``oracle.checks``
    the classical verifications. A ``cache`` dict shared between searches skips
    re-simulating circuits that were already prepared for the same oracle.
    """
    seed = rng if isinstance(rng, (int, np.integer)) else None
    rng = np.random.default_rng(rng)
    tally = _Tally(oracle, cache if cache is not None else {})
    N = oracle.spec.N

    def result(index: int, ok: int, branch: str, q: int) -> RunResult:
        return RunResult(index, ok, oracle.calls, branch, q, seed, oracle.checks)

    if policy.known_m is not None:
        branch = dispatch_known(N, policy.known_m)
        if branch == "grover":
            q = grover_iteration_count(N, policy.known_m)
            build = lambda o: grover(o, q)
        else:
            q = 1
            build = younes_once
        for _ in range(policy.verify_retries):
            index, ok = tally.measure(build, (branch, q), q, rng)
            if ok:
                break
        return result(index, ok, branch, q)

    q = policy.younes_q
    index, ok = tally.measure(lambda o: younes_iterated(o, q), ("younes-iterated", q), q, rng)
    if ok:
        return result(index, ok, "younes-iterated", q)

    cap = policy.cap_calls(N)
    ceiling = 1.0
    spent = j = 0
    # j = 0 rounds cost no oracle calls; bound the attempts so termination is certain
    for _ in range(4 * cap + 16):
        if spent >= cap:
            break
        j = min(int(rng.integers(0, math.ceil(ceiling))), cap - spent)
        spent += j
        index, ok = tally.measure(lambda o, j=j: grover(o, j), ("grover", j), j, rng)
        if ok:
            return result(index, ok, "hybrid-fallback", j)
        ceiling = min(policy.fallback_growth * ceiling, math.sqrt(N))
    return result(index, ok, "hybrid-fallback", j)
