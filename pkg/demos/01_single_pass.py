"""
One oracle call, many matches
=============================

Walk through the single-pass search on a small register and compare the
simulated statevector with the analytic amplitudes.
"""

# %%
# Three search qubits plus one workspace qubit, with three of the eight
# items marked.
import numpy as np

from qsearch import CountingOracle, OracleSpec, success_probability, younes_once
from qsearch import closed_form as cf

spec = OracleSpec(3, (1, 4, 6))
prepared = younes_once(CountingOracle(spec))

# %%
# Every amplitude is real and takes one of two values: ``a`` on a marked
# prefix with workspace 1, ``b`` everywhere else.
amps = prepared.state.amplitudes.real.reshape(8, 2)
print(amps.round(4))
expected = cf.one_shot_amplitudes(8, spec.M)
print("a =", round(expected.a, 4), " b =", round(expected.b, 4))

# %%
# Measuring the three search qubits finds a match with probability
# ``5x - 8x^2 + 4x^3`` for ``x = M/N``.
print("simulated:", success_probability(prepared))
print("analytic: ", cf.p_success_once(8, spec.M))

# %%
# The curve against the marked fraction: certain at x = 1/2 and never
# below 92.6% once more than half the list matches.
for x in (1 / 8, 1 / 4, 1 / 2, 5 / 6, 1.0):
    print(f"x = {x:.3f}   p = {cf.p_once_ratio(x):.6f}")
