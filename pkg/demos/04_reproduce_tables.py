"""
Table and figure data
=====================

The same numbers the ``qsearch`` command emits, produced through the library.
"""

# %%
from qsearch.experiments import sweep, table1

for row in table1(6, simulate=True):
    print(
        f"n={row['n']}  max={row['max']:.6f}  min={row['min']:.6f}  avg={row['avg']:.6f}"
        f"  (simulated avg {row['avg_sim']:.6f}, simplified form {row['avg_printed']:.6f})"
    )

# %%
# The ratio sweeps are plain columns; plot them with any tool.
columns, rows = sweep(5, 8)
print(columns)
for r in rows:
    print(["%.4f" % v for v in r])
