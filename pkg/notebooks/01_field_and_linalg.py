"""Arithmetic in Z_d and dense linear algebra over it."""

# %%
import numpy as np

from qudit_compiler.field import PrimeField, inv_mod, parse_scalar
from qudit_compiler.linalg import invert, rank, right_null_space, row_reduce

# %% [markdown]
# Scalars live in Z_d for a prime d > 3. Fraction literals such as ``1/6`` are
# resolved with modular inverses, which is how prototype weights are written.

# %%
F = PrimeField(7)
print(F("1/6"), F(3) * F("1/3"), inv_mod(6, 7), parse_scalar("-2/5", 7))

# %% [markdown]
# Row reduction, rank and the right null space are exact. The null-space basis
# vectors are scaled so their leading entry is 1.

# %%
d = 5
M = np.array([[1, 2, 3, 4], [2, 4, 1, 3], [3, 1, 4, 2]])
R, pivots = row_reduce(M, d)
N = right_null_space(M, d)
print(R, pivots, rank(M, d), sep="\n")
print("null space basis:\n", N)
print("M @ N mod d:\n", M @ N % d)

# %%
E = np.array([[1, 1, 0], [0, 1, 2], [1, 0, 1]])
print(invert(E, d) @ E % d)
