"""Netlists over {Z, S, M^k, P_l, SUM}: simulation, extraction and synthesis.

Every gate in the set maps a basis state to a basis state times a power of
omega, so circuits are simulated exactly by tracking the omega-exponent as a
residue mod d. No complex arithmetic is involved anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .field import check_modulus, inv_mod
from .phasepoly import (
    Implementation,
    SignatureTensor,
    all_points,
    cube_vectors,
    sorted_triples,
)

GATE_NAMES = ("Z", "S", "M", "P", "SUM", "SUMINV")
DIAGONAL_POWER = {"Z": 1, "S": 2, "M": 3}
MAX_BASIS_STATES = 10**6


class DimensionTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class Gate:
    """One netlist entry.

    ``Z``/``S``/``M`` carry an exponent ``param`` (``M q k`` is ``M^k``), ``P``
    carries its nonzero multiplier, ``SUM``/``SUMINV`` act on ``(control, target)``
    and ignore ``param``.
    """

    name: str
    qudits: tuple[int, ...]
    param: int = 1

    def __post_init__(self):
        if self.name not in GATE_NAMES:
            raise ValueError(f"unknown gate {self.name!r}")
        q = tuple(int(i) for i in self.qudits)
        object.__setattr__(self, "qudits", q)
        arity = 2 if self.name in ("SUM", "SUMINV") else 1
        if len(q) != arity:
            raise ValueError(f"{self.name} acts on {arity} qudit(s), got {q}")
        if arity == 2 and q[0] == q[1]:
            raise ValueError(f"{self.name} needs distinct control and target, got {q}")

    def inverse(self, d: int) -> Gate:
        if self.name == "SUM":
            return Gate("SUMINV", self.qudits)
        if self.name == "SUMINV":
            return Gate("SUM", self.qudits)
        if self.name == "P":
            return Gate("P", self.qudits, inv_mod(self.param, d))
        return Gate(self.name, self.qudits, -self.param % d)

    def __str__(self):
        if self.name in ("SUM", "SUMINV"):
            return f"{self.name} {self.qudits[0]} {self.qudits[1]}"
        return f"{self.name} {self.qudits[0]} {self.param}"


def Z(q, k=1):
    return Gate("Z", (q,), k)


def S(q, k=1):
    return Gate("S", (q,), k)


def M(q, k=1):
    return Gate("M", (q,), k)


def P(q, l):
    return Gate("P", (q,), l)


def SUM(c, t):
    return Gate("SUM", (c, t))


def SUMINV(c, t):
    return Gate("SUMINV", (c, t))


@dataclass(frozen=True)
class Circuit:
    d: int
    n: int
    gates: tuple[Gate, ...] = field(default_factory=tuple)

    def __post_init__(self):
        check_modulus(self.d)
        gates = []
        for g in self.gates:
            if any(not 0 <= q < self.n for q in g.qudits):
                raise ValueError(f"gate {g} out of range for n={self.n}")
            p = g.param % self.d
            if g.name in ("M", "P") and p == 0:
                raise ValueError(f"gate {g} has a zero parameter")
            gates.append(Gate(g.name, g.qudits, p) if p != g.param else g)
        object.__setattr__(self, "gates", tuple(gates))

    def __add__(self, other: Circuit) -> Circuit:
        if (self.d, self.n) != (other.d, other.n):
            raise ValueError("cannot concatenate circuits of different shape")
        return Circuit(self.d, self.n, self.gates + other.gates)

    def __len__(self):
        return len(self.gates)

    @property
    def m_count(self) -> int:
        return sum(g.name == "M" for g in self.gates)

    def count(self, name: str) -> int:
        return sum(g.name == name for g in self.gates)

    def inverse(self) -> Circuit:
        return Circuit(self.d, self.n, tuple(g.inverse(self.d) for g in reversed(self.gates)))


@dataclass(frozen=True, eq=False)
class PhaseProfile:
    """``U|x> = omega^(cubic(x) + x^T Q x + L.x) |E x>``."""

    E: np.ndarray
    S: SignatureTensor
    Q: np.ndarray
    L: np.ndarray

    @property
    def d(self) -> int:
        return self.S.d

    def phase(self, x) -> int:
        return int(self.phases(np.atleast_2d(np.asarray(x, dtype=np.int64)))[0])

    def phases(self, X: np.ndarray) -> np.ndarray:
        d = self.d
        X = np.asarray(X, dtype=np.int64) % d
        out = X @ self.L % d
        out += np.einsum("ka,ab,kb->k", X, self.Q, X) % d
        for (a, b, c), v in self.S.entries.items():
            mult = 6 if len({a, b, c}) == 3 else (1 if a == c else 3)
            out += mult * v * (X[:, a] * X[:, b] % d) * X[:, c] % d
        return out % d

    def is_pure_cubic(self) -> bool:
        return (
            np.array_equal(self.E, np.eye(len(self.E), dtype=np.int64))
            and not self.Q.any()
            and not self.L.any()
        )


def _apply(gates: Sequence[Gate], X: np.ndarray, d: int) -> tuple[np.ndarray, np.ndarray]:
    X = X.copy()
    phase = np.zeros(len(X), dtype=np.int64)
    for g in gates:
        q = g.qudits
        if g.name in DIAGONAL_POWER:
            x = X[:, q[0]]
            phase = (phase + g.param * (x ** DIAGONAL_POWER[g.name] % d)) % d
        elif g.name == "P":
            X[:, q[0]] = X[:, q[0]] * g.param % d
        elif g.name == "SUM":
            X[:, q[1]] = (X[:, q[1]] + X[:, q[0]]) % d
        else:
            X[:, q[1]] = (X[:, q[1]] - X[:, q[0]]) % d
    return phase, X


def simulate_basis(circ: Circuit, x) -> tuple[int, np.ndarray]:
    """Return ``(phase, y)`` with ``U|x> = omega^phase |y>``."""
    x = np.asarray(x, dtype=np.int64).reshape(1, -1) % circ.d
    if x.shape[1] != circ.n:
        raise ValueError(f"expected {circ.n} qudit values, got {x.shape[1]}")
    phase, Y = _apply(circ.gates, x, circ.d)
    return int(phase[0]), Y[0]


def simulate_all(circ: Circuit, points: np.ndarray | None = None):
    """Vectorized :func:`simulate_basis` over ``points`` (default: every basis state)."""
    if points is None:
        _guard(circ.d, circ.n)
        points = all_points(circ.n, circ.d)
    return _apply(circ.gates, np.asarray(points, dtype=np.int64) % circ.d, circ.d)


def _guard(d: int, n: int):
    if d**n > MAX_BASIS_STATES:
        raise DimensionTooLarge(f"{d}^{n} basis states exceed the limit of {MAX_BASIS_STATES}")


def circuits_equal(c1: Circuit, c2: Circuit) -> bool:
    """Exact unitary equality, checked on every basis state."""
    if (c1.d, c1.n) != (c2.d, c2.n):
        raise ValueError("circuits act on different spaces")
    _guard(c1.d, c1.n)
    p1, y1 = simulate_all(c1)
    p2, y2 = simulate_all(c2)
    return bool(np.array_equal(p1, p2) and np.array_equal(y1, y2))


def extract(circ: Circuit) -> PhaseProfile:
    """Symbolic simulation: track each wire as a linear form over the inputs."""
    d, n = circ.d, circ.n
    F = np.eye(n, dtype=np.int64)
    L = np.zeros(n, dtype=np.int64)
    Q = np.zeros((n, n), dtype=np.int64)
    cubic = np.zeros(len(sorted_triples(n)), dtype=np.int64)
    for g in circ.gates:
        q = g.qudits
        if g.name == "Z":
            L = (L + g.param * F[q[0]]) % d
        elif g.name == "S":
            Q = (Q + g.param * np.outer(F[q[0]], F[q[0]])) % d
        elif g.name == "M":
            cubic = (cubic + g.param * cube_vectors(F[q[0]].reshape(n, 1), d)[0]) % d
        elif g.name == "P":
            F[q[0]] = F[q[0]] * g.param % d
        elif g.name == "SUM":
            F[q[1]] = (F[q[1]] + F[q[0]]) % d
        else:
            F[q[1]] = (F[q[1]] - F[q[0]]) % d
    return PhaseProfile(F, SignatureTensor.from_vector(n, d, cubic), Q, L)


def _load_form(col: np.ndarray, t: int, d: int) -> list[Gate]:
    """P/SUM gates leaving wire ``t`` holding ``sum_i col[i] x_i``."""
    gates = []
    if col[t] != 1:
        gates.append(P(t, int(col[t])))
    for c in np.flatnonzero(col):
        c = int(c)
        if c == t:
            continue
        a = int(col[c])
        if a == 1:
            gates.append(SUM(c, t))
        elif a == d - 1:
            gates.append(SUMINV(c, t))
        else:
            gates += [P(c, a), SUM(c, t), P(c, inv_mod(a, d))]
    return gates


def synthesize_cubic(imp: Implementation) -> Circuit:
    """One ``M^lam_j`` per column, sandwiched between a form-loading block and its inverse."""
    d, n = imp.d, imp.n
    gates: list[Gate] = []
    for j in range(imp.m):
        col = imp.A[:, j]
        t = int(np.flatnonzero(col)[0])
        D = _load_form(col, t, d)
        gates += D
        gates.append(M(t, int(imp.lam[j])))
        gates += [g.inverse(d) for g in reversed(D)]
    return Circuit(d, n, tuple(gates))


def _row_add(c: int, t: int, s: int, d: int) -> list[Gate]:
    """Gates for ``row_t += s * row_c`` on the wire forms."""
    s %= d
    if s == 1:
        return [SUM(c, t)]
    if s == d - 1:
        return [SUMINV(c, t)]
    return [P(c, s), SUM(c, t), P(c, inv_mod(s, d))]


def decompose_linear(E, d: int) -> Circuit:
    """SUM/P circuit whose wire map is ``x -> E x``, by Gauss-Jordan on ``E``."""
    E = linalg.as_matrix(E, d)
    n = E.shape[0]
    if E.shape != (n, n):
        raise ValueError("E must be square")
    linalg.invert(E, d)  # raises on singular input
    R = E.copy()
    ops: list[list[Gate]] = []  # each op is the inverse of the elimination step taken

    def add(t, c, s):
        R[t] = (R[t] + s * R[c]) % d
        ops.append(_row_add(c, t, -s, d))

    for col in range(n):
        if R[col, col] == 0:
            below = [r for r in range(col + 1, n) if R[r, col]]
            add(col, below[0], 1)
        piv = int(R[col, col])
        if piv != 1:
            R[col] = R[col] * inv_mod(piv, d) % d
            ops.append([P(col, piv)])
        for r in range(n):
            if r != col and R[r, col]:
                add(r, col, -int(R[r, col]))
    gates = [g for op in reversed(ops) for g in op]
    return Circuit(d, n, tuple(gates))


def synthesize_clifford_diagonal(Q, L, d: int) -> Circuit:
    """Z and S gates (with SUM conjugation for cross terms) realizing ``x^T Q x + L.x``."""
    Q = linalg.as_matrix(Q, d)
    L = np.asarray(L, dtype=np.int64).reshape(-1) % d
    n = len(L)
    if not np.array_equal(Q, Q.T):
        raise ValueError("Q must be symmetric")
    gates: list[Gate] = []
    diag = np.diag(Q).copy()
    for a in range(n):
        for b in range(a + 1, n):
            k = int(Q[a, b])
            if not k:
                continue
            # 2k x_a x_b = k((x_a + x_b)^2 - x_a^2 - x_b^2)
            gates += [SUM(a, b), S(b, k), SUMINV(a, b)]
            diag[a] -= k
            diag[b] -= k
    diag %= d
    gates += [S(a, int(diag[a])) for a in range(n) if diag[a]]
    gates += [Z(a, int(L[a])) for a in range(n) if L[a]]
    return Circuit(d, n, tuple(gates))


def synthesize(profile: PhaseProfile, imp: Implementation) -> Circuit:
    """Full circuit: cubic part from ``imp``, then the Clifford diagonal, then ``E``."""
    d = profile.d
    return (
        synthesize_cubic(imp)
        + synthesize_clifford_diagonal(profile.Q, profile.L, d)
        + decompose_linear(profile.E, d)
    )


def build_ccz_family(variant: str, size: int, d: int) -> SignatureTensor:
    """Signature of ``CCZ^{(x)size}`` (``"tensor_power"``) or ``size`` CCZs sharing qudit 0 (``"shared_control"``)."""
    sixth = inv_mod(6, d)
    if variant == "tensor_power":
        n = 3 * size
        triples = [(3 * i, 3 * i + 1, 3 * i + 2) for i in range(size)]
    elif variant == "shared_control":
        n = 2 * size + 1
        triples = [(0, 2 * j - 1, 2 * j) for j in range(1, size + 1)]
    else:
        raise ValueError(f"unknown CCZ family {variant!r}")
    return SignatureTensor(n, d, {t: sixth for t in triples})


def random_circuit(n: int, d: int, num_gates: int, seed=None) -> Circuit:
    """Uniformly random netlist over the gate set (nonzero parameters)."""
    rng = np.random.default_rng(seed)
    gates = []
    for _ in range(num_gates):
        name = GATE_NAMES[rng.integers(len(GATE_NAMES)) if n > 1 else rng.integers(4)]
        if name in ("SUM", "SUMINV"):
            c, t = rng.choice(n, size=2, replace=False)
            gates.append(Gate(name, (int(c), int(t))))
        else:
            gates.append(Gate(name, (int(rng.integers(n)),), int(rng.integers(1, d))))
    return Circuit(d, n, tuple(gates))


def from_gates(d: int, n: int, gates: Iterable[Gate]) -> Circuit:
    return Circuit(d, n, tuple(gates))
