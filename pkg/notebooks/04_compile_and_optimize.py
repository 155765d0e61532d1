"""Monomial substitution, brute force and duplicate-and-merge."""

# %%
import time

from qudit_compiler.circuit import build_ccz_family
from qudit_compiler.optimize import (
    LEGACY,
    MS,
    DamConfig,
    SearchExhausted,
    best_of_n,
    brute_force,
    dam,
    repetitions_needed,
    substitute,
)
from qudit_compiler.phasepoly import signature_of

# %%
d = 5
S = build_ccz_family("tensor_power", 1, d)
print("MS:", substitute(S, MS).m, "Legacy:", substitute(S, LEGACY).m)

# %% [markdown]
# Brute force certifies that no three-column implementation of CCZ exists and
# returns a four-column one.

# %%
t = time.perf_counter()
try:
    brute_force(S, 3)
except SearchExhausted as e:
    print("no implementation with m <=", e.m_max)
print("found m =", brute_force(S, 4).m, f"in {time.perf_counter() - t:.1f}s")

# %% [markdown]
# DAM is randomized; each run starts from the Legacy compilation.

# %%
start = substitute(S, LEGACY)
runs = [dam(start, DamConfig(seed=s)).m for s in range(20)]
print("single runs:", runs)
best = best_of_n(S, LEGACY, N=10, master_seed=0)
print("best of 10:", best.m, signature_of(best) == S)

# %%
S2 = build_ccz_family("shared_control", 2, d)
print("CCZ#2 legacy", substitute(S2, LEGACY).m, "-> DAM", best_of_n(S2, LEGACY, 10, 0).m)
print("runs for 95% confidence at p_opt=0.47:", repetitions_needed(0.47, 0.95))
