"""Reproducible experiment drivers behind the command line tool.

Every driver returns plain Python data (dicts and lists) so the CLI only has
to serialize it.
"""
from __future__ import annotations

import csv
import math
from collections import Counter
from pathlib import Path
from typing import Sequence

import numpy as np

from . import closed_form as cf
from .algorithms import (
    count_solutions,
    grover,
    sample_shots,
    success_probability,
    younes_iterated,
    younes_once,
)
from .hybrid import HybridPolicy, grover_iteration_count, search
from .oracle import CountingOracle, OracleSpec

ALGORITHMS = ("younes", "younes-iter", "grover")
MODELS = ("younes", "younes-iter", "grover", "classical", "average")
FIGURES = (5, 7, 8)


def _simulated_once(n: int, M: int) -> float:
    # success depends only on how many items are marked, not which
    return success_probability(younes_once(CountingOracle(OracleSpec(n, tuple(range(M))))))


def table1(n_max: int = 6, simulate: bool = False) -> list[dict]:
    """Max/min/average single-pass success probability for ``n = 2..n_max``.

    ``avg`` is the direct binomially weighted sum; ``avg_printed`` is the
    simplified ``1 - 2**-N`` form, reported alongside because they differ.
    """
    if not 2 <= n_max <= 12:
        raise ValueError("n_max must lie in [2, 12]")
    rows = []
    for n in range(2, n_max + 1):
        N = 2**n
        probs = [cf.p_success_once(N, M) for M in range(1, N + 1)]
        row = {
            "n": n,
            "max": max(probs),
            "min": min(probs),
            "avg": cf.average_p_once(N),
            "avg_printed": cf.average_p_once_printed(N),
        }
        if simulate:
            sim = [_simulated_once(n, M) for M in range(1, N + 1)]
            weights = [math.comb(N, M) for M in range(1, N + 1)]
            row["max_sim"] = max(sim)
            row["min_sim"] = min(sim)
            row["avg_sim"] = math.fsum(w * p for w, p in zip(weights, sim)) / 2**N
        rows.append(row)
    return rows


def sweep(figure: int, points: int) -> tuple[list[str], list[list[float]]]:
    """Curves for the ratio plots, sampled at ``k/points`` for ``k = 1..points``."""
    if points < 2:
        raise ValueError("need at least 2 points")
    x = np.arange(1, points + 1) / points
    if figure == 5:
        columns = ["ratio", "p_younes", "p_grover_q1", "p_classical"]
        data = [x, cf.p_once_ratio(x), cf.p_grover_ratio(x, 1), x]
    elif figure == 7:
        columns = ["ratio"] + [f"p_younes_iter_q{q}" for q in range(1, 7)]
        data = [x] + [cf.p_iterated_ratio(x, q) for q in range(1, 7)]
    elif figure == 8:
        qs = range(1, 6)
        columns = ["ratio"] + [f"p_grover_q{q}" for q in qs] + [f"p_younes_iter_q{q}" for q in qs]
        data = [x] + [cf.p_grover_ratio(x, q) for q in qs] + [cf.p_iterated_ratio(x, q) for q in qs]
    else:
        raise ValueError(f"figure must be one of {FIGURES}, got {figure}")
    rows = np.column_stack(data).tolist()
    return columns, rows


def write_csv(path: str | Path | None, columns: Sequence[str], rows: Sequence[Sequence], stream=None) -> None:
    def emit(handle):
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([f"{v:.9g}" if isinstance(v, float) else v for v in row])

    if path is None:
        emit(stream)
    else:
        with open(path, "w", newline="") as handle:
            emit(handle)


def predicted_probability(algorithm: str, N: int, M: int, q: int) -> float:
    if M == 0:
        return 0.0
    if algorithm == "younes":
        return cf.p_success_once(N, M)
    if algorithm == "younes-iter":
        return cf.p_success_iterated(N, M, q)
    if algorithm == "grover":
        return cf.p_grover(N, M, q)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def default_q(algorithm: str, spec: OracleSpec) -> int:
    if algorithm == "grover":
        return grover_iteration_count(spec.N, spec.M) if spec.M else 0
    return 1


def simulate(algorithm: str, spec: OracleSpec, seed: int, shots: int, q: int | None = None) -> dict:
    """Prepare, measure and verify ``shots`` times; compare with the closed form."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    if q is None:
        q = default_q(algorithm, spec)
    oracle = CountingOracle(spec)
    if algorithm == "younes":
        if q != 1:
            raise ValueError("the single-pass algorithm always uses q = 1")
        prepared = younes_once(oracle)
    elif algorithm == "younes-iter":
        prepared = younes_iterated(oracle, q)
    elif algorithm == "grover":
        prepared = grover(oracle, q)
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    outcomes = sample_shots(prepared, shots, seed)
    successes = count_solutions(spec.marked_array, outcomes)
    return {
        "algorithm": algorithm,
        "n": spec.n,
        "m": spec.M,
        "q": q,
        "seed": seed,
        "shots": shots,
        "successes": successes,
        "success_rate": successes / shots,
        "predicted": predicted_probability(algorithm, spec.N, spec.M, q),
        "oracle_calls": oracle.calls * shots,
    }


def shot_rng(seed: int, shot: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(shot,)))


def hybrid_bench(
    spec: OracleSpec,
    seed: int,
    shots: int,
    known_m: bool = False,
    policy: HybridPolicy | None = None,
) -> dict:
    if shots < 1:
        raise ValueError("shots must be >= 1")
    if policy is None:
        policy = HybridPolicy(known_m=spec.M if known_m else None)
    cache: dict = {}
    results = []
    for shot in range(shots):
        results.append(search(CountingOracle(spec), policy, shot_rng(seed, shot), cache=cache))
    successes = sum(r.is_solution for r in results)
    calls = [r.oracle_calls for r in results]
    return {
        "n": spec.n,
        "m": spec.M,
        "known_m": policy.known_m is not None,
        "seed": seed,
        "shots": shots,
        "successes": successes,
        "success_rate": successes / shots,
        "mean_oracle_calls": float(np.mean(calls)),
        "max_oracle_calls": int(max(calls)),
        "mean_checks": float(np.mean([r.checks for r in results])),
        "call_budget": policy.younes_q + policy.cap_calls(spec.N),
        "branches": dict(sorted(Counter(r.branch for r in results).items())),
    }


def predict(model: str, n: int, m: int | None = None, q: int | None = None) -> dict:
    N = 2**n
    out: dict = {"model": model, "n": n, "N": N}
    if model == "average":
        out["average_younes"] = cf.average_p_once(N)
        out["average_younes_printed_form"] = cf.average_p_once_printed(N)
        out["average_classical"] = cf.average_p_classical(N)
        if q is not None:
            out["q"] = q
            out["average_grover"] = cf.average_p_grover(N, q)
        return out
    if m is None:
        raise ValueError(f"model {model!r} needs --m")
    out["m"] = m
    if model == "classical":
        cf._check_size(N, m)
        out["probability"] = m / N
        return out
    if model not in ALGORITHMS:
        raise ValueError(f"unknown model {model!r}")
    if q is None:
        q = default_q(model, OracleSpec(n, tuple(range(m))))
    out["q"] = q
    out["probability"] = predicted_probability(model, N, m, q)
    return out
