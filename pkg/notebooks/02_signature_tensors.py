"""Signature tensors, implementations and the phase polynomial they define."""

# %%
import numpy as np

from qudit_compiler.field import parse_scalar
from qudit_compiler.phasepoly import (
    Implementation,
    evaluate,
    evaluate_tensor,
    monomials_of,
    signature_of,
)

# %% [markdown]
# An implementation ``(A, lam)`` is a sum of weighted cubes of linear forms, one per
# column of ``A``. Its signature tensor is symmetric and stored on sorted triples.
# The four-column CCZ implementation below has signature ``x0 x1 x2``.

# %%
d = 5
A = [[1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]]
imp = Implementation(A, [parse_scalar("1/24", d)] * 4, d)
S = signature_of(imp)
print(S.entries)
print([str(m) for m in monomials_of(S)])

# %% [markdown]
# Both views agree pointwise.

# %%
rng = np.random.default_rng(1)
for x in rng.integers(0, d, size=(5, 3)):
    print(x, evaluate(imp, x), evaluate_tensor(S, x), int(np.prod(x)) % d)
