"""
Iterating with a fresh workspace qubit each round
=================================================

Each round adds one workspace qubit, so ``q`` rounds use ``n + q`` qubits.
The success probability has the closed form
``1 - (1 - x)(1 - 2x)^(2q)``.
"""

# %%
from qsearch import CountingOracle, random_oracle, success_probability, younes_iterated
from qsearch import closed_form as cf

spec = random_oracle(5, 3, seed=11)
for q in range(1, 6):
    p = success_probability(younes_iterated(CountingOracle(spec), q))
    print(f"q = {q}  simulated {p:.9f}  closed form {cf.p_success_iterated(32, 3, q):.9f}")

# %%
# The amplitude ladder tracks the distinct amplitudes without simulating.
ladder = cf.amplitude_ladder(32, 3, 3)
print("marked-prefix amplitudes:", ladder.a_list.round(5), ladder.b_list.round(5))
print("unmarked amplitude:", round(ladder.unmarked, 5))

# %%
# Coverage: the share of ratios that reach probability 1/2.
for q in range(1, 7):
    print(f"q = {q}  coverage {cf.coverage_fraction(q, 0.5):.4f}")

# %%
# Worst case when more than half the items match.
for q in (1, 2, 3):
    x, p = cf.min_p_over_upper_range(q)
    print(f"q = {q}  worst ratio {x:.4f}  probability {p:.5f}")
