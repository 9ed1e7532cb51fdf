"""Analytic success probabilities and amplitude recurrences.

Functions taking ``(N, M)`` expect ``N`` to be a power of two. The ``*_ratio``
variants accept a real-valued ``x = M/N`` and are what the figure sweeps use.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import bisect
from scipy.special import gammaln

EXACT_AVERAGE_MAX_N = 64
AVERAGE_MAX_N = 2**20


def _check_size(N: int, M: int | None = None) -> None:
    if N < 2 or N & (N - 1):
        raise ValueError(f"N must be a power of two >= 2, got {N}")
    if M is not None and not 0 <= M <= N:
        raise ValueError(f"M must lie in [0, {N}], got {M}")


def _check_q(q: int, low: int = 1) -> None:
    if q < low:
        raise ValueError(f"q must be >= {low}, got {q}")


# -- one application ---------------------------------------------------------

@dataclass(frozen=True)
class OneShotAmplitudes:
    a: float
    b: float
    P: int
    mean: float


def one_shot_amplitudes(N: int, M: int) -> OneShotAmplitudes:
    """Amplitudes after a single oracle + diffusion pass on ``n + 1`` qubits.

    ``a`` sits on marked prefixes with workspace 1, ``b`` on everything else.
    """
    _check_size(N, M)
    P = 2 * N
    root = math.sqrt(P)
    mean = (P - 2 * M) / (P * root)
    return OneShotAmplitudes(
        a=(3 - 4 * M / P) / root,
        b=(1 - 4 * M / P) / root,
        P=P,
        mean=mean,
    )


def p_once_ratio(x):
    return 5 * x - 8 * x**2 + 4 * x**3


def p_success_once(N: int, M: int) -> float:
    _check_size(N, M)
    return p_once_ratio(M / N)


def p_nonsuccess_once(N: int, M: int) -> float:
    amps = one_shot_amplitudes(N, M)
    return (amps.P - 2 * M) * amps.b**2


# -- iterated version --------------------------------------------------------

@dataclass(frozen=True)
class AmplitudeLadder:
    """Distinct amplitudes on a marked prefix after ``q`` iterations.

    Every marked prefix carries ``a_list`` and ``b_list`` (``2**q`` workspace
    patterns in total); every unmarked basis state carries ``b_list[0]``.
    """

    N: int
    M: int
    q: int
    a_list: np.ndarray
    b_list: np.ndarray
    mean_history: np.ndarray

    @property
    def unmarked(self) -> float:
        return float(self.b_list[0])

    def success_probability(self) -> float:
        return float(self.M * (np.sum(self.a_list**2) + np.sum(self.b_list**2)))

    def total_norm(self) -> float:
        unmarked_mass = (self.N - self.M) * 2**self.q * self.unmarked**2
        return self.success_probability() + unmarked_mass


def amplitude_ladder(N: int, M: int, q: int) -> AmplitudeLadder:
    _check_size(N, M)
    _check_q(q)
    s2 = math.sqrt(2.0)
    x = M / N
    start = 1.0 / math.sqrt(N)
    a = np.array([start])
    b = np.array([start])
    means = []
    for k in range(1, q + 1):
        mean = b[0] / s2 * (1 - x)
        means.append(mean)
        if k == 1:
            # the first pass puts the oracle-flipped (+) branch on a and (-) on b
            a = np.array([2 * mean + a[0] / s2])
            b = np.array([2 * mean - b[0] / s2])
            continue
        a = np.column_stack((2 * mean - a / s2, 2 * mean + a / s2)).ravel()
        b = np.column_stack((2 * mean - b / s2, 2 * mean + b / s2)).ravel()
    return AmplitudeLadder(N, M, q, a, b, np.array(means))


def p_iterated_ratio(x, q: int):
    return (x - 1) * ((1 - 2 * x) ** 2) ** q + 1


def p_success_iterated(N: int, M: int, q: int) -> float:
    _check_size(N, M)
    _check_q(q)
    return p_iterated_ratio(M / N, q)


def b0_closed(N: int, M: int, q: int) -> float:
    _check_size(N, M)
    _check_q(q, low=0)
    return (1 / math.sqrt(N)) * (1 / math.sqrt(2)) ** q * (1 - 2 * M / N) ** q


# -- Grover ------------------------------------------------------------------

def p_grover_ratio(x, q: int):
    theta = np.arcsin(np.sqrt(x))
    return np.sin((2 * q + 1) * theta) ** 2


def p_grover(N: int, M: int, q: int) -> float:
    """``sin^2((2q+1) theta)`` with ``sin^2 theta = M/N``.

    Raises for ``M = 0``: there is no marked state to rotate towards.
    """
    _check_size(N, M)
    _check_q(q, low=0)
    if M == 0:
        raise ValueError("Grover's success curve is defined for M >= 1")
    return float(p_grover_ratio(M / N, q))


# -- averages over uniformly random oracles -----------------------------------

def _binomial_average(N: int, prob_exact, prob_float) -> float:
    """``2**-N * sum_{M=1..N} C(N, M) * p(M)``."""
    _check_size(N)
    if N > AVERAGE_MAX_N:
        raise ValueError(f"N={N} is too large to average directly (limit {AVERAGE_MAX_N})")
    if N <= EXACT_AVERAGE_MAX_N:
        total = sum(math.comb(N, M) * prob_exact(Fraction(M, N)) for M in range(1, N + 1))
        return float(total / 2**N)
    M = np.arange(1, N + 1)
    log_w = gammaln(N + 1) - gammaln(M + 1) - gammaln(N - M + 1) - N * math.log(2.0)
    return float(np.sum(np.exp(log_w) * prob_float(M / N)))


def average_p_once(N: int) -> float:
    return _binomial_average(N, p_once_ratio, p_once_ratio)


def average_p_once_printed(N: int) -> float:
    """The simplified closed form ``1 - 2**-N`` that accompanies the average.

    It does not agree with the direct sum (which equals ``1 - 1/(2N)``);
    kept so reports can show both.
    """
    _check_size(N)
    return 1.0 - 2.0**-N


def average_p_classical(N: int) -> float:
    return _binomial_average(N, lambda x: x, lambda x: x)


def average_p_grover(N: int, q: int) -> float:
    _check_q(q, low=0)
    grover = lambda x: p_grover_ratio(float(x), q)
    return _binomial_average(N, grover, grover)


def grover_sum_identity(N: int, k: int) -> float:
    """``sum_{M=1..N} C(N, M) sin^2(k theta_M)`` with ``sin^2 theta_M = M/N``.

    For odd ``k`` this equals ``2**(N-1)``.
    """
    if k < 1 or k % 2 == 0:
        raise ValueError(f"k must be an odd positive integer, got {k}")
    if not 1 <= N <= 20:
        raise ValueError("direct summation is limited to N <= 20")
    terms = [math.comb(N, M) * math.sin(k * math.asin(math.sqrt(M / N))) ** 2 for M in range(1, N + 1)]
    return math.fsum(terms)


# -- iteration counts and coverage --------------------------------------------

def _check_ratio_target(N: int, M: int, target_p: float) -> float:
    _check_size(N, M)
    if not 0 < M < N:
        raise ValueError("need 0 < M < N")
    if not 0 < target_p < 1:
        raise ValueError("target probability must lie in (0, 1)")
    return M / N


def iterations_lower_bound(N: int, M: int, target_p: float) -> float:
    """First-order estimate of the iterations needed to reach ``target_p``."""
    x = _check_ratio_target(N, M, target_p)
    return (target_p - x) / (4 * x * (1 - x))


def exact_iterations(N: int, M: int, target_p: float) -> float:
    """Real ``q`` solving ``p_iterated(M/N, q) == target_p``; negative when ``M/N`` already suffices."""
    x = _check_ratio_target(N, M, target_p)
    if 2 * M == N:
        raise ValueError("M = N/2 succeeds with certainty for every q")
    return math.log((1 - target_p) / (1 - x)) / (2 * math.log(abs(1 - 2 * x)))


def coverage_fraction(q: int, threshold_p: float = 0.5) -> float:
    """Fraction ``1 - x*`` of ratios at which ``q`` iterations reach ``threshold_p``.

    ``x*`` is the least ratio in ``(0, 1/2]`` meeting the threshold; the success
    curve is increasing there.
    """
    _check_q(q)
    if threshold_p <= 0:
        return 1.0
    if threshold_p > 1:
        return 0.0
    gap = lambda x: p_iterated_ratio(x, q) - threshold_p
    if gap(1e-15) >= 0:
        return 1.0
    x_star = bisect(gap, 0.0, 0.5, xtol=1e-12)
    return 1.0 - x_star


def min_p_over_upper_range(q: int) -> tuple[float, float]:
    """Worst ratio in ``[1/2, 1]`` and its success probability after ``q`` iterations."""
    _check_q(q)
    x_star = (4 * q + 1) / (4 * q + 2)
    return x_star, p_iterated_ratio(x_star, q)
