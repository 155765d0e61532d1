"""Benchmark rows and the DAM optimality-rate experiment."""

# %%
from qudit_compiler import bench

# %%
rows = bench.run_table1_subset(0, rows=("ccz", "cczs2", "random"), ds=(5,), instances=20)
print(bench.rows_to_csv(rows))

# %% [markdown]
# Fraction of single DAM runs that reach a brute-force-certified optimum of 3.

# %%
res = bench.measure_p_opt(instances=5, runs=40, seed=0)
print(f"p_opt = {res.p_opt:.2f} +/- {res.stderr:.2f}, N = {res.repetitions(0.95)}")
print("mu <= m violations:", res.mu_violations, "of", res.mu_checks)
