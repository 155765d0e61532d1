"""Signature tensors, implementations and the maps between them.

A homogeneous cubic phase polynomial on ``n`` qudits is stored either as a
symmetric signature tensor ``S`` (keyed by sorted index triples) or as an
implementation ``(A, lam)``, a sum of ``m`` weighted cubes of linear forms::

    f(x) = sum_j lam[j] * (sum_i A[i, j] * x[i])**3

Indices are 0-based in code; the text formats in :mod:`.formats` use 1-based
triples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement, permutations, product
from typing import Iterable, Mapping

import numpy as np

from .field import check_modulus, inv_mod


@lru_cache(maxsize=None)
def sorted_triples(n: int) -> tuple[tuple[int, int, int], ...]:
    return tuple(combinations_with_replacement(range(n), 3))


@lru_cache(maxsize=None)
def _triple_array(n: int) -> np.ndarray:
    return np.array(sorted_triples(n), dtype=np.int64).reshape(-1, 3)


def multiplicity(triple) -> int:
    """Number of distinct orderings of ``triple`` (1, 3 or 6)."""
    a, b, c = sorted(triple)
    if a == b == c:
        return 1
    if a == b or b == c:
        return 3
    return 6


@dataclass(frozen=True)
class SignatureTensor:
    """Symmetric order-3 tensor over Z_d, stored sparsely on sorted triples."""

    n: int
    d: int
    entries: Mapping[tuple[int, int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        check_modulus(self.d)
        clean = {}
        for key, v in dict(self.entries).items():
            t = tuple(sorted(int(i) for i in key))
            if len(t) != 3 or not all(0 <= i < self.n for i in t):
                raise ValueError(f"bad triple {key} for n={self.n}")
            v = (clean.get(t, 0) + int(v)) % self.d
            if v:
                clean[t] = v
            else:
                clean.pop(t, None)
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    def __getitem__(self, idx) -> int:
        return self.entries.get(tuple(sorted(idx)), 0)

    def __eq__(self, other):
        if not isinstance(other, SignatureTensor):
            return NotImplemented
        return (self.n, self.d, self.entries) == (other.n, other.d, other.entries)

    def __hash__(self):
        return hash((self.n, self.d, tuple(self.entries.items())))

    def is_zero(self) -> bool:
        return not self.entries

    def to_vector(self) -> np.ndarray:
        """Entries in :func:`sorted_triples` order."""
        return np.array([self[t] for t in sorted_triples(self.n)], dtype=np.int64)

    @classmethod
    def from_vector(cls, n: int, d: int, vec) -> SignatureTensor:
        return cls(n, d, {t: int(v) for t, v in zip(sorted_triples(n), vec) if v % d})

    def to_dense(self) -> np.ndarray:
        T = np.zeros((self.n,) * 3, dtype=np.int64)
        for t, v in self.entries.items():
            for p in set(permutations(t)):
                T[p] = v
        return T

    def __repr__(self):
        body = ", ".join(f"{tuple(i + 1 for i in t)}: {v}" for t, v in self.entries.items())
        return f"SignatureTensor(n={self.n}, d={self.d}, {{{body}}})"


@dataclass(frozen=True, eq=False)
class Implementation:
    """An ``n x m`` matrix ``A`` with nonzero columns plus ``m`` nonzero weights."""

    A: np.ndarray
    lam: np.ndarray
    d: int

    def __post_init__(self):
        d = check_modulus(self.d)
        A = np.array(self.A, dtype=np.int64, ndmin=2) % d
        lam = np.array(self.lam, dtype=np.int64).reshape(-1) % d
        if A.shape[1] != lam.size:
            raise ValueError(f"A has {A.shape[1]} columns but lam has {lam.size} entries")
        if (lam == 0).any():
            raise ValueError("every weight must be nonzero")
        if lam.size and (~A.any(axis=0)).any():
            raise ValueError("every column of A needs a nonzero entry")
        A.setflags(write=False)
        lam.setflags(write=False)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "lam", lam)

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def m(self) -> int:
        return self.lam.size

    @classmethod
    def empty(cls, n: int, d: int) -> Implementation:
        return cls(np.zeros((n, 0), dtype=np.int64), np.zeros(0, dtype=np.int64), d)

    @classmethod
    def from_columns(cls, n: int, d: int, columns: Iterable, weights: Iterable) -> Implementation:
        cols = [np.asarray(c, dtype=np.int64).reshape(n) for c in columns]
        A = np.stack(cols, axis=1) if cols else np.zeros((n, 0), dtype=np.int64)
        return cls(A, np.fromiter(weights, dtype=np.int64, count=len(cols)), d)

    def columns(self):
        return [self.A[:, j] for j in range(self.m)]

    def __eq__(self, other):
        if not isinstance(other, Implementation):
            return NotImplemented
        return (
            self.d == other.d
            and self.A.shape == other.A.shape
            and np.array_equal(self.A, other.A)
            and np.array_equal(self.lam, other.lam)
        )

    def __repr__(self):
        return f"Implementation(n={self.n}, m={self.m}, d={self.d},\nA=\n{self.A},\nlam={self.lam})"


@dataclass(frozen=True)
class Monomial:
    """A cubic monomial ``coeff * prod x[i]**deg`` with sorted distinct indices."""

    indices: tuple[int, ...]
    degrees: tuple[int, ...]
    coeff: int

    @property
    def kind(self) -> str:
        return {1: "cube", 2: "square", 3: "triple"}[len(self.indices)]


def signature_of(imp: Implementation) -> SignatureTensor:
    """``S[a,b,c] = sum_j lam[j] A[a,j] A[b,j] A[c,j]``."""
    return SignatureTensor.from_vector(imp.n, imp.d, cube_vectors(imp.A, imp.d).T @ imp.lam % imp.d)


def cube_vectors(A: np.ndarray, d: int) -> np.ndarray:
    """Row ``j`` holds the sorted-triple entries of ``c_j (x) c_j (x) c_j``."""
    A = np.asarray(A, dtype=np.int64)
    T = _triple_array(A.shape[0])
    prod_ = A[T[:, 0]] * A[T[:, 1]] % d * A[T[:, 2]] % d
    return prod_.T.copy()


def monomials_of(S: SignatureTensor) -> list[Monomial]:
    """Expand ``S`` into monomials; off-diagonal entries pick up their multiplicity."""
    out = []
    for t, v in S.entries.items():
        coeff = multiplicity(t) * v % S.d
        if not coeff:
            continue
        idx = tuple(sorted(set(t)))
        out.append(Monomial(idx, tuple(t.count(i) for i in idx), coeff))
    return out


def tensor_from_monomials(n: int, d: int, monomials: Iterable[Monomial]) -> SignatureTensor:
    entries: dict = {}
    for mono in monomials:
        t = tuple(sorted(i for i, k in zip(mono.indices, mono.degrees) for _ in range(k)))
        v = mono.coeff * inv_mod(multiplicity(t), d)
        entries[t] = (entries.get(t, 0) + v) % d
    return SignatureTensor(n, d, entries)


def evaluate(imp: Implementation, x) -> int:
    """``f(x)`` through the sum-of-cubes form."""
    x = np.asarray(x, dtype=np.int64) % imp.d
    forms = x @ imp.A % imp.d
    return int((forms**3 % imp.d) @ imp.lam % imp.d)


def evaluate_tensor(S: SignatureTensor, x) -> int:
    """``f(x)`` as the sum over all index orderings of ``S[a,b,c] x_a x_b x_c``."""
    total = 0
    for t, v in S.entries.items():
        a, b, c = t
        total += multiplicity(t) * v * x[a] * x[b] * x[c]
    return total % S.d


def all_points(n: int, d: int) -> np.ndarray:
    """Every vector of Z_d^n, one per row, in lexicographic order."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(product(range(d), repeat=n)), dtype=np.int64)


def evaluate_all(imp: Implementation, points: np.ndarray) -> np.ndarray:
    forms = points @ imp.A % imp.d
    return (forms**3 % imp.d) @ imp.lam % imp.d


def canonical_column(c, lam: int, d: int) -> tuple[np.ndarray, int]:
    """Rescale ``(c, lam)`` to ``(c/s, lam*s^3)`` where ``s`` is the leading entry of ``c``."""
    c = np.asarray(c, dtype=np.int64) % d
    s = int(c[np.flatnonzero(c)[0]])
    return c * inv_mod(s, d) % d, lam * pow(s, 3, d) % d


def random_signature(n: int, d: int, seed=None, mode: str = "triples") -> SignatureTensor:
    """Random tensor where each element is zero with probability 1/2.

    ``mode="triples"`` draws each sorted triple independently. ``mode="entries"``
    draws all ``n**3`` entries of a generic (non-symmetric) coefficient array and
    symmetrizes, so a monomial's coefficient is the sum of its permuted entries.
    """
    rng = np.random.default_rng(seed)
    if mode == "triples":
        k = len(sorted_triples(n))
        vals = rng.integers(1, d, size=k) * (rng.random(k) < 0.5)
        return SignatureTensor.from_vector(n, d, vals)
    if mode == "entries":
        full = rng.integers(1, d, size=(n, n, n)) * (rng.random((n, n, n)) < 0.5)
        entries = {}
        for t in sorted_triples(n):
            perms = set(permutations(t))
            total = sum(int(full[p]) for p in perms)
            entries[t] = total * inv_mod(len(perms), d)
        return SignatureTensor(n, d, entries)
    raise ValueError(f"unknown mode {mode!r}")


def random_implementation(n: int, m: int, d: int, seed=None) -> Implementation:
    """Uniform ``A`` among matrices without zero columns, uniform nonzero weights."""
    rng = np.random.default_rng(seed)
    A = rng.integers(0, d, size=(n, m))
    for j in range(m):
        while not A[:, j].any():
            A[:, j] = rng.integers(0, d, size=n)
    return Implementation(A, rng.integers(1, d, size=m), d)
