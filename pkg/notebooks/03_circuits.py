"""Circuits over {Z, S, M, P, SUM}: simulation, extraction and synthesis."""

# %%
from qudit_compiler.circuit import (
    circuits_equal,
    extract,
    random_circuit,
    simulate_basis,
    synthesize,
)
from qudit_compiler.optimize import MS, substitute

# %% [markdown]
# Simulation tracks the phase exponent of omega exactly, so no complex numbers are
# needed and equality checks are exact.

# %%
d, n = 5, 3
circ = random_circuit(n, d, 25, seed=3)
print(len(circ), "gates,", circ.count("SUM"), "SUM, M-count", circ.m_count)
print(simulate_basis(circ, (1, 2, 3)))

# %% [markdown]
# Extraction splits a circuit into its linear map ``E`` and the cubic, quadratic and
# linear parts of its phase polynomial. Compiling the cubic part and resynthesizing
# all parts gives an equivalent circuit.

# %%
prof = extract(circ)
print("E =\n", prof.E)
imp = substitute(prof.S, MS)
out = synthesize(prof, imp)
print("rebuilt M-count", out.m_count, "equal:", circuits_equal(circ, out))
