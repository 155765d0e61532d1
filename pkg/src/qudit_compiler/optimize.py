"""M-count compilers: monomial substitution, brute force and Duplicate-And-Merge.

All compilers consume a :class:`~.phasepoly.SignatureTensor` (or an existing
:class:`~.phasepoly.Implementation`) and return an implementation whose column
count is the M-count of the circuit :func:`~.circuit.synthesize_cubic` emits.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from itertools import combinations, product
from typing import Callable

import numpy as np

from . import linalg
from .field import inv_mod
from .phasepoly import (
    Implementation,
    Monomial,
    SignatureTensor,
    _triple_array,
    cube_vectors,
    monomials_of,
    signature_of,
    sorted_triples,
)

log = logging.getLogger(__name__)


class SearchExhausted(LookupError):
    """No implementation with at most ``m_max`` columns exists."""

    def __init__(self, m_max: int):
        super().__init__(f"no implementation with at most {m_max} columns")
        self.m_max = m_max


class ResourceLimitExceeded(RuntimeError):
    pass


# --------------------------------------------------------------------------
# Monomial substitution
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class PrototypeSet:
    """Substitution rules for the three monomial kinds.

    ``"MS"`` uses the 4-column rule for ``x_a x_b x_c``; ``"Legacy"`` the
    7-column one. Both share the 1-column cube rule and the 3-column
    ``x_a x_b^2`` rule.
    """

    tag: str = "MS"

    def __post_init__(self):
        if self.tag not in ("MS", "Legacy"):
            raise ValueError(f"unknown prototype set {self.tag!r}")

    def columns(self, mono: Monomial, n: int, d: int) -> list[tuple[np.ndarray, int]]:
        """Weighted columns whose cubes sum to ``mono``."""
        k = mono.coeff

        def vec(*terms):
            v = np.zeros(n, dtype=np.int64)
            for i, s in terms:
                v[i] = s % d
            return v

        sixth, third = inv_mod(6, d), inv_mod(3, d)
        if mono.kind == "cube":
            (a,) = mono.indices
            return [(vec((a, 1)), k)]
        if mono.kind == "square":
            # x_a x_b^2 with b the squared variable
            i, j = mono.indices
            a, b = (i, j) if mono.degrees == (1, 2) else (j, i)
            return [
                (vec((a, 1), (b, 1)), k * sixth % d),
                (vec((a, 1), (b, -1)), k * sixth % d),
                (vec((a, 1)), -k * third % d),
            ]
        a, b, c = mono.indices
        if self.tag == "MS":
            w = k * inv_mod(24, d) % d
            return [
                (vec((a, 1), (b, 1), (c, 1)), w),
                (vec((a, 1), (b, -1), (c, -1)), w),
                (vec((a, -1), (b, 1), (c, -1)), w),
                (vec((a, -1), (b, -1), (c, 1)), w),
            ]
        w = k * sixth % d
        return [
            (vec((a, 1)), w),
            (vec((b, 1)), w),
            (vec((c, 1)), w),
            (vec((a, 1), (b, 1)), -w % d),
            (vec((a, 1), (c, 1)), -w % d),
            (vec((b, 1), (c, 1)), -w % d),
            (vec((a, 1), (b, 1), (c, 1)), w),
        ]


MS = PrototypeSet("MS")
LEGACY = PrototypeSet("Legacy")


def _merge(A: np.ndarray, lam: np.ndarray, d: int) -> Implementation:
    n = A.shape[0]
    acc: dict[bytes, list] = {}
    for j in range(A.shape[1]):
        c = A[:, j] % d
        nz = np.flatnonzero(c)
        if nz.size == 0:
            continue
        s = int(c[nz[0]])
        c = c * inv_mod(s, d) % d
        w = int(lam[j]) * pow(s, 3, d) % d
        key = c.tobytes()
        if key in acc:
            acc[key][1] = (acc[key][1] + w) % d
        else:
            acc[key] = [c, w]
    kept = [(c, w) for c, w in acc.values() if w]
    return Implementation.from_columns(n, d, (c for c, _ in kept), (w for _, w in kept))


def merge_columns(imp: Implementation) -> Implementation:
    """Canonicalize columns to leading-one form and merge equal ones.

    Scaling a column by ``1/s`` and its weight by ``s^3`` leaves the signature
    unchanged, so columns equal up to a scalar are merged too. Weights that
    cancel to zero remove the column.
    """
    return _merge(imp.A, imp.lam, imp.d)


def substitute(S: SignatureTensor, proto: PrototypeSet = MS) -> Implementation:
    """Monomial substitution followed by :func:`merge_columns`."""
    cols, weights = [], []
    for mono in monomials_of(S):
        for c, w in proto.columns(mono, S.n, S.d):
            cols.append(c)
            weights.append(w)
    if not cols:
        return Implementation.empty(S.n, S.d)
    return _merge(np.stack(cols, axis=1), np.array(weights, dtype=np.int64), S.d)


# --------------------------------------------------------------------------
# Brute force
# --------------------------------------------------------------------------


def canonical_columns(n: int, d: int) -> np.ndarray:
    """All nonzero vectors of Z_d^n whose first nonzero entry is 1, lexicographically."""
    rows = [v for v in product(range(d), repeat=n) if any(v) and v[next(i for i, x in enumerate(v) if x)] == 1]
    return np.array(rows, dtype=np.int64).reshape(-1, n)


def brute_force(
    S: SignatureTensor,
    m_max: int,
    *,
    max_candidates: float = 2e9,
    batch_entries: int = 1 << 22,
) -> Implementation:
    """Column-minimal implementation of ``S`` by search in increasing ``m``.

    Columns are restricted to leading-one form and strictly increasing order;
    weights range over all of ``(Z_d \\ {0})^m``. Every implementation can be
    brought to that form without changing ``m``, so the first hit is optimal.

    Raises:
        SearchExhausted: nothing found with ``m <= m_max``.
        ResourceLimitExceeded: the candidate count would exceed ``max_candidates``.
    """
    n, d = S.n, S.d
    target = S.to_vector()
    if not target.any():
        return Implementation.empty(n, d)
    cols = canonical_columns(n, d)
    V = cube_vectors(cols.T, d)  # (K, T)
    K, T = V.shape
    total = sum(math.comb(K, m) * (d - 1) ** m for m in range(1, m_max + 1))
    if total > max_candidates:
        raise ResourceLimitExceeded(f"brute force needs {total:.3g} candidates (limit {max_candidates:.3g})")
    for m in range(1, m_max + 1):
        lams = np.array(list(product(range(1, d), repeat=m)), dtype=np.int64)
        batch = max(1, batch_entries // (len(lams) * T))
        combos = combinations(range(K), m)
        while True:
            chunk = np.fromiter(
                (i for c in _take(combos, batch) for i in c), dtype=np.int64
            ).reshape(-1, m)
            if not len(chunk):
                break
            sums = np.matmul(lams[None], V[chunk]) % d  # (B, L, T)
            hit = np.argwhere((sums == target).all(axis=2))
            if len(hit):
                b, li = hit[0]
                log.debug("brute force hit at m=%d", m)
                return Implementation(cols[chunk[b]].T, lams[li], d)
        log.debug("brute force: no implementation with m=%d", m)
    raise SearchExhausted(m_max)


def _take(it, k):
    for _, x in zip(range(k), it):
        yield x


# --------------------------------------------------------------------------
# Duplicate-And-Merge
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CubicMergeSystem:
    """Relinearized merge conditions for columns ``a`` and ``b``.

    ``D`` has one row per sorted triple with a nonzero coefficient and column
    blocks ``(l | q | c)`` for ``y``, ``y**2`` and ``y**3``.
    """

    imp: Implementation
    a: int
    b: int
    z: np.ndarray
    D: np.ndarray
    triples: tuple

    @property
    def m(self) -> int:
        return self.imp.m

    @property
    def d(self) -> int:
        return self.imp.d

    def delta(self, y) -> np.ndarray:
        """Signature change under ``A -> A + z y^T`` evaluated directly (all triples)."""
        A, lam, d, z = self.imp.A, self.imp.lam, self.d, self.z
        y = np.asarray(y, dtype=np.int64) % d
        T = _triple_array(self.imp.n)
        out = np.zeros(len(T), dtype=np.int64)
        for j in range(self.m):
            col = A[:, j]
            new = (col + z * y[j]) % d
            for r, (al, be, ga) in enumerate(T):
                out[r] += lam[j] * (new[al] * new[be] % d * new[ga] - col[al] * col[be] % d * col[ga])
        return out % d


def build_merge_system(imp: Implementation, a: int, b: int) -> CubicMergeSystem:
    if a == b or not (0 <= a < imp.m and 0 <= b < imp.m):
        raise ValueError(f"bad column pair ({a}, {b}) for m={imp.m}")
    A, lam, d = imp.A, imp.lam, imp.d
    z = (A[:, b] - A[:, a]) % d
    T = _triple_array(imp.n)
    Aa, Ab, Ag = A[T[:, 0]], A[T[:, 1]], A[T[:, 2]]
    za, zb, zg = (z[T[:, i]][:, None] for i in range(3))
    l = (Aa * Ab % d * zg + Ab * Ag % d * za + Ag * Aa % d * zb) % d * lam % d
    q = (Aa * zb % d * zg + Ab * zg % d * za + Ag * za % d * zb) % d * lam % d
    c = (za * zb % d * zg % d) * lam % d
    D = np.hstack([l, q, c])
    keep = D.any(axis=1)
    triples = tuple(t for t, k in zip(sorted_triples(imp.n), keep) if k)
    return CubicMergeSystem(imp, a, b, z, D[keep], triples)


def reduced_solution_space(system: CubicMergeSystem) -> np.ndarray:
    """``N_D''``: the ``y``-rows of null(D), column-reduced, zero columns dropped."""
    m, d = system.m, system.d
    if len(system.D):
        N = linalg.right_null_space(system.D, d)
    else:
        N = np.eye(3 * m, dtype=np.int64)
    Np = linalg.column_reduce(N[:m], d)
    return Np[:, Np.any(axis=0)]


def _digits(idx: np.ndarray, d: int, k: int) -> np.ndarray:
    out = np.empty((len(idx), k), dtype=np.int64)
    for i in range(k):
        out[:, i] = idx % d
        idx = idx // d
    return out


def _residual(D: np.ndarray, Y: np.ndarray, d: int) -> np.ndarray:
    Y2 = Y * Y % d
    return (np.hstack([Y, Y2, Y2 * Y % d]) @ D.T) % d


def _solutions_relin(system: CubicMergeSystem, Npp: np.ndarray, chunk: int = 1 << 15) -> np.ndarray:
    """Enumerate ``y = N'' x`` subject to the pin, keep exact roots."""
    m, d, a, b = system.m, system.d, system.a, system.b
    mu = Npp.shape[1]
    r = (Npp[a] - Npp[b]) % d
    nz = np.flatnonzero(r)
    if nz.size == 0:
        return np.zeros((0, m), dtype=np.int64)
    x0 = np.zeros(mu, dtype=np.int64)
    x0[nz[0]] = inv_mod(int(r[nz[0]]), d)
    K = linalg.right_null_space(r.reshape(1, -1), d)  # mu x (mu-1)
    free = K.shape[1]
    found = []
    for start in range(0, d**free, chunk):
        W = _digits(np.arange(start, min(start + chunk, d**free), dtype=np.int64), d, free)
        X = (x0 + W @ K.T) % d
        Y = X @ Npp.T % d
        ok = ~_residual(system.D, Y, d).any(axis=1) if len(system.D) else np.ones(len(Y), bool)
        found.append(Y[ok])
    return np.vstack(found) if found else np.zeros((0, m), dtype=np.int64)


def _solutions_mitm(system: CubicMergeSystem) -> np.ndarray:
    """All roots of ``sum_j g_j(y_j) = 0`` with ``y_a = y_b + 1``, by meet in the middle.

    Each column's contribution ``g_j(v) = l_j v + q_j v^2 + c_j v^3`` depends on
    ``y_j`` alone, so two halves of the variables can be enumerated separately
    and joined on equal-and-opposite partial sums.
    """
    m, d, a, b = system.m, system.d, system.a, system.b
    D = system.D
    R = len(D)
    v = np.arange(d, dtype=np.int64)
    G = (
        np.outer(v, D[:, :m].T.ravel()).reshape(d, m, R)
        + np.outer(v * v % d, D[:, m : 2 * m].T.ravel()).reshape(d, m, R)
        + np.outer(v * v * v % d, D[:, 2 * m :].T.ravel()).reshape(d, m, R)
    ) % d  # G[value, j, row]
    pinned = (G[(v + 1) % d, a] + G[v, b]) % d  # indexed by y_b
    rest = [j for j in range(m) if j not in (a, b)]
    h = len(rest) // 2
    left_vars, right_vars = rest[:h], rest[h:]

    def table(vars_, extra):
        k = len(vars_)
        assign = _digits(np.arange(d**k, dtype=np.int64), d, k)
        sums = np.zeros((len(assign), R), dtype=np.int64)
        for i, j in enumerate(vars_):
            sums += G[assign[:, i], j]
        if extra is None:
            return assign, sums % d
        # prepend the pinned variable y_b
        assign = np.hstack([np.repeat(v, len(assign))[:, None], np.tile(assign, (d, 1))])
        sums = (np.repeat(extra, d**k, axis=0) + np.tile(sums, (d, 1))) % d
        return assign, sums

    la, ls = table(left_vars, pinned)
    ra, rs = table(right_vars, None)
    weights = np.random.default_rng(0x5EED).integers(1, 1 << 31, size=R)
    lk = (-ls % d) @ weights
    rk = rs @ weights
    order = np.argsort(rk, kind="stable")
    rk_sorted = rk[order]
    lo = np.searchsorted(rk_sorted, lk, "left")
    hi = np.searchsorted(rk_sorted, lk, "right")
    counts = hi - lo
    li = np.repeat(np.arange(len(lk)), counts)
    offsets = np.arange(counts.sum()) - np.repeat(np.cumsum(counts) - counts, counts)
    ri = order[np.repeat(lo, counts) + offsets]
    exact = ~((ls[li] + rs[ri]) % d).any(axis=1)
    li, ri = li[exact], ri[exact]
    Y = np.zeros((len(li), m), dtype=np.int64)
    Y[:, b] = la[li, 0]
    Y[:, a] = (la[li, 0] + 1) % d
    for i, j in enumerate(left_vars):
        Y[:, j] = la[li, i + 1]
    for i, j in enumerate(right_vars):
        Y[:, j] = ra[ri, i]
    return Y


def merge_solutions(system: CubicMergeSystem, method: str = "auto") -> tuple[np.ndarray, int]:
    """Every ``y`` admissible for merging, sorted lexicographically, plus ``mu``.

    ``method="relin"`` walks the relinearized solution space ``N'' x``;
    ``"mitm"`` solves the same cubic system by meet in the middle. Both return
    the identical set; ``"auto"`` picks whichever enumerates fewer vectors.
    """
    Npp = reduced_solution_space(system)
    mu = Npp.shape[1]
    m, d = system.m, system.d
    if method == "auto":
        relin_cost = d ** max(mu - 1, 0)
        mitm_cost = d ** ((m - 2) // 2 + 1) + d ** (m - 2 - (m - 2) // 2)
        method = "relin" if relin_cost <= mitm_cost else "mitm"
    if method == "relin":
        Y = _solutions_relin(system, Npp)
    elif method == "mitm":
        Y = _solutions_mitm(system)
    else:
        raise ValueError(f"unknown method {method!r}")
    Y = np.unique(Y, axis=0) if len(Y) else Y.reshape(0, m)
    return Y, mu


def solve_merge(
    system: CubicMergeSystem,
    rng=None,
    *,
    method: str = "auto",
    on_mu: Callable[[int, int], None] | None = None,
) -> np.ndarray | None:
    """A root ``y`` of the merge system with ``y_a - y_b = 1``, or ``None``.

    The root is drawn uniformly from all roots, which is what scanning the
    relinearized candidates in a random order and stopping at the first
    accepted one produces.
    """
    rng = np.random.default_rng(rng)
    Y, mu = merge_solutions(system, method)
    if on_mu is not None:
        on_mu(mu, system.m)
    if not len(Y):
        return None
    return Y[rng.integers(len(Y))]


def duplicate(A: np.ndarray, a: int, b: int, y, d: int) -> np.ndarray:
    """``A + (c_b - c_a) y^T``; with ``y_a - y_b = 1`` columns a and b coincide."""
    z = (A[:, b] - A[:, a]) % d
    return (A + np.outer(z, np.asarray(y, dtype=np.int64))) % d


@dataclass(frozen=True)
class DamConfig:
    seed: int | None = None
    max_sweeps: int = 10_000
    method: str = "auto"

    def __post_init__(self):
        if self.max_sweeps < 1:
            raise ValueError("max_sweeps must be at least 1")


def dam(
    imp: Implementation,
    cfg: DamConfig = DamConfig(),
    *,
    on_step: Callable[[Implementation, Implementation], None] | None = None,
    on_mu: Callable[[int, int], None] | None = None,
) -> Implementation:
    """Duplicate-And-Merge.

    Each sweep visits the column pairs in a random order, and for the first pair
    whose merge system has a root it applies the duplication transformation and
    merges columns; the sweep then restarts. Stops after a sweep with no merge
    or after ``cfg.max_sweeps`` sweeps.

    ``on_step(before, after)`` is called after each successful merge.
    """
    rng = np.random.default_rng(cfg.seed)
    cur = merge_columns(imp)
    d = cur.d
    for _ in range(cfg.max_sweeps):
        pairs = list(combinations(range(cur.m), 2))
        merged = False
        for k in rng.permutation(len(pairs)):
            a, b = pairs[k]
            system = build_merge_system(cur, a, b)
            y = solve_merge(system, rng, method=cfg.method, on_mu=on_mu)
            if y is None:
                continue
            nxt = _merge(duplicate(cur.A, a, b, y, d), cur.lam, d)
            if on_step is not None:
                on_step(cur, nxt)
            log.debug("dam: merged columns %d,%d: m %d -> %d", a, b, cur.m, nxt.m)
            cur = nxt
            merged = True
            break
        if not merged:
            break
    return cur


def best_of_n(
    S: SignatureTensor,
    proto: PrototypeSet = LEGACY,
    N: int = 10,
    master_seed: int | None = None,
    *,
    start: Implementation | None = None,
    method: str = "auto",
) -> Implementation:
    """Substitute once, run ``N`` independently seeded DAM passes, keep the smallest."""
    if N < 1:
        raise ValueError("N must be at least 1")
    base = start if start is not None else substitute(S, proto)
    seeds = np.random.SeedSequence(master_seed).spawn(N)
    best = None
    for i, ss in enumerate(seeds):
        out = dam(base, DamConfig(seed=ss.generate_state(2)[0], method=method))
        if best is None or out.m < best[0]:
            best = (out.m, i, out)
    return best[2]


def repetitions_needed(p_opt: float, p_conf: float) -> int:
    """Runs needed so at least one hits the optimum with probability ``p_conf``."""
    if not (0 < p_opt < 1 and 0 < p_conf < 1):
        raise ValueError("p_opt and p_conf must lie strictly between 0 and 1")
    # round first so exact ratios such as 1.0 do not ceil up through float noise
    return math.ceil(round(math.log(1 - p_conf) / math.log(1 - p_opt), 9))


def check_signature(imp: Implementation, S: SignatureTensor) -> bool:
    return signature_of(imp) == S
