"""Dense linear algebra over Z_d on ``int64`` numpy arrays.

Matrices are ordinary 2-D arrays whose entries lie in ``[0, d)``; every
function takes the modulus explicitly and returns fresh arrays.
"""

from __future__ import annotations

import numpy as np

from .field import inv_mod


class SingularMatrixError(ValueError):
    pass


def as_matrix(M, d: int) -> np.ndarray:
    A = np.array(M, dtype=np.int64, ndmin=2, copy=True)
    return A % d


def matmul(A, B, d: int) -> np.ndarray:
    # entries < 2**16 so a row-column dot fits in int64 for any practical width
    return (np.asarray(A, dtype=np.int64) @ np.asarray(B, dtype=np.int64)) % d


def row_reduce(M, d: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form with first-nonzero pivoting.

    Returns:
        (R, pivots): ``R`` is the RREF of ``M`` and ``pivots`` lists the pivot
        column of each nonzero row.
    """
    R = as_matrix(M, d)
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        p = r + nz[0]
        if p != r:
            R[[r, p]] = R[[p, r]]
        R[r] = R[r] * inv_mod(int(R[r, c]), d) % d
        factors = R[:, c].copy()
        factors[r] = 0
        if factors.any():
            R = (R - np.outer(factors, R[r])) % d
        pivots.append(c)
        r += 1
    return R, pivots


def rank(M, d: int) -> int:
    return len(row_reduce(M, d)[1])


def column_reduce(M, d: int) -> np.ndarray:
    """Reduced column echelon form; zero columns end up on the right."""
    R, _ = row_reduce(np.asarray(M).T, d)
    return R.T.copy()


def right_null_space(M, d: int) -> np.ndarray:
    """Basis of ``{v : M v = 0}`` as the columns of a ``cols x k`` array.

    Each basis column is scaled so its first nonzero entry is 1.
    """
    M = as_matrix(M, d)
    cols = M.shape[1]
    R, pivots = row_reduce(M, d)
    free = [c for c in range(cols) if c not in set(pivots)]
    N = np.zeros((cols, len(free)), dtype=np.int64)
    for k, f in enumerate(free):
        N[f, k] = 1
        for i, p in enumerate(pivots):
            N[p, k] = -R[i, f] % d
        lead = N[np.flatnonzero(N[:, k])[0], k]
        N[:, k] = N[:, k] * inv_mod(int(lead), d) % d
    assert not matmul(M, N, d).any()
    return N


def invert(M, d: int) -> np.ndarray:
    M = as_matrix(M, d)
    n, m = M.shape
    if n != m:
        raise ValueError(f"cannot invert a non-square {n}x{m} matrix")
    R, pivots = row_reduce(np.hstack([M, np.eye(n, dtype=np.int64)]), d)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError(f"matrix has rank {sum(p < n for p in pivots)} < {n}")
    return R[:, n:].copy()


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)
