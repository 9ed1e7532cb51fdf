"""
Choosing between Grover and the single-pass search
==================================================

With a known number of matches the engine dispatches on ``M/N``; with an
unknown number it tries three iterated rounds and then falls back to a
randomized Grover schedule.
"""

# %%
import numpy as np

from qsearch import CountingOracle, HybridPolicy, dispatch_known, random_oracle, search
from qsearch.experiments import hybrid_bench

for M in (1, 7, 8, 40, 64):
    print(f"N = 64, M = {M:2d} -> {dispatch_known(64, M)}")

# %%
# One search, with the oracle counting superposed calls and classical checks.
spec = random_oracle(8, 5, seed=2)
oracle = CountingOracle(spec)
result = search(oracle, HybridPolicy(), np.random.default_rng(0))
print(result)

# %%
# Aggregate behaviour over many seeded searches.
for M in (0, 1, 16, 128):
    report = hybrid_bench(random_oracle(8, M, seed=M), seed=5, shots=500)
    print(M, report["success_rate"], report["mean_oracle_calls"], report["branches"])
