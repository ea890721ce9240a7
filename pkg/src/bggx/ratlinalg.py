"""Exact and modular rank computations for integer matrices.

Two complementary paths:

* :func:`rank_exact` runs fraction-free (Bareiss) elimination over the
  rationals.  It is unconditionally correct but cubic with growing
  integer entries, so it is the tool of choice for small and
  medium-sized matrices.

* :func:`rank_mod` computes the rank over a prime field F_p using
  blocked elimination whose trailing updates are float64 matrix
  products.  With the primes in :data:`MOD_PRIMES` every intermediate
  value stays below 2**53, so the floating-point arithmetic is exact.
  A modular rank is always a *lower* bound for the rational rank,
  which is exactly what the homology-vanishing certificates need.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

import numpy as np

# Both are prime and below 2**19.01, so n accumulated products of
# canonical residues stay below 2**53 for n <= 30000 and the whole
# elimination can run in exact float64 with almost no reductions.
MOD_PRIMES = (524287, 524269)

_PANEL = 256
_MINI = 16
_MAX_COLS = 30000


def _int_rows(matrix: Iterable[Sequence]) -> list[list[int]]:
    """Copy ``matrix`` into integer rows, clearing denominators per row.

    Scaling a row by a positive integer does not change the rank, so each
    row is multiplied by the lcm of its entries' denominators.
    """
    rows = []
    for row in matrix:
        vals = [Fraction(x) for x in row]
        mult = lcm(*(v.denominator for v in vals)) if vals else 1
        rows.append([int(v * mult) for v in vals])
    return rows


def rank_exact(matrix) -> int:
    """Rank over Q of a matrix with integer or rational entries.

    Accepts any iterable of rows (lists, tuples, numpy arrays).  Uses
    Bareiss fraction-free elimination: all intermediate entries are
    integers (minors of the original matrix), all divisions are exact.
    """
    if isinstance(matrix, np.ndarray):
        if matrix.ndim != 2:
            raise ValueError("expected a 2-d matrix")
        rows = [[int(x) for x in row] for row in matrix.tolist()]
    else:
        rows = _int_rows(matrix)
    if not rows or not rows[0]:
        return 0
    m, n = len(rows), len(rows[0])
    if any(len(r) != n for r in rows):
        raise ValueError("ragged matrix")

    rank = 0
    prev = 1
    col = 0
    while rank < m and col < n:
        piv = next((i for i in range(rank, m) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        if piv != rank:
            rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        pv = pr[col]
        for i in range(rank + 1, m):
            ri = rows[i]
            f = ri[col]
            if f:
                for j in range(col + 1, n):
                    ri[j] = (ri[j] * pv - f * pr[j]) // prev
                ri[col] = 0
            elif prev != 1 or pv != 1:
                for j in range(col + 1, n):
                    ri[j] = ri[j] * pv // prev
        prev = pv
        rank += 1
        col += 1
    return rank


def rank_mod(matrix, p: int) -> int:
    """Rank of an integer matrix over F_p.

    This is always a lower bound for the rank over Q.  Blocked
    right-looking elimination carried out entirely in float64 with no
    pivot normalization and one BLAS product per panel.  For p below
    2**19.01 and at most 30000 columns, every trailing entry
    accumulates to at most p + n(p-1)^2 < 2**53 across all panels, so
    the floating-point arithmetic is exact and only the active panel
    ever needs canonicalizing.
    """
    a = np.asarray(matrix, dtype=np.int64)
    if a.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    if a.size == 0:
        return 0
    if a.shape[1] > a.shape[0]:
        a = a.T
    m, n = a.shape
    if n > _MAX_COLS or n * (p - 1) ** 2 + p >= 2**53:
        raise ValueError("modulus too large for the exact float64 budget")
    a = np.ascontiguousarray(a % p, dtype=np.float64)

    rank = 0
    c0 = 0
    while c0 < n and rank < m:
        c1 = min(c0 + _PANEL, n)
        pw = c1 - c0
        panel = a[rank:, c0:c1]  # view: updates land in a directly
        L = np.zeros((panel.shape[0], pw))
        npiv = 0
        # Two-level blocking: per-pivot updates touch only a narrow
        # mini-panel; the rest of the panel is charged by one small
        # matrix product per mini, just like the outer trailing block.
        for mj0 in range(0, pw, _MINI):
            mj1 = min(mj0 + _MINI, pw)
            piv0 = npiv
            for j in range(mj0, mj1):
                col = panel[npiv:, j]
                np.mod(col, p, out=col)  # accumulation from every level
                nz = np.nonzero(col)[0]
                if nz.size == 0:
                    continue
                piv = npiv + int(nz[0])
                if piv != npiv:
                    a[[rank + npiv, rank + piv]] = a[[rank + piv, rank + npiv]]
                    L[[npiv, piv]] = L[[piv, npiv]]
                pivrow = panel[npiv, j:mj1]
                np.mod(pivrow, p, out=pivrow)
                inv = pow(int(panel[npiv, j]), p - 2, p)
                below = panel[npiv + 1 :, j]
                mults = (below * inv) % p
                if mults.any():
                    panel[npiv + 1 :, j:mj1] -= mults[:, None] * pivrow
                L[npiv + 1 :, npiv] = mults
                npiv += 1
            dn = npiv - piv0
            if dn and mj1 < pw:
                rest = panel[piv0:, mj1:]
                u = rest[:dn]
                np.mod(u, p, out=u)
                for i in range(1, dn):
                    li = L[piv0 + i, piv0 : piv0 + i]
                    if li.any():
                        u[i] -= li @ u[:i]
                        np.mod(u[i], p, out=u[i])
                rest[dn:] -= L[piv0 + dn :, piv0:npiv] @ u
        if npiv and c1 < n:
            # Replay the panel's row operations on the trailing block:
            # sequential forward substitution canonicalizes the pivot
            # rows, then one exact dgemm charges everything below; the
            # result is left unreduced until its own panel comes up.
            trail = a[rank:, c1:]
            u = trail[:npiv]
            np.mod(u, p, out=u)
            for i in range(1, npiv):
                li = L[i, :i]
                if li.any():
                    u[i] -= li @ u[:i]
                    np.mod(u[i], p, out=u[i])
            trail[npiv:] -= L[npiv:, :npiv] @ u
        rank += npiv
        c0 = c1
    return rank


def rank_lower_bound(matrix, primes: Sequence[int] = MOD_PRIMES) -> int:
    """Best modular lower bound for the rational rank.

    The rank over F_p never exceeds the rank over Q, so the maximum over
    several primes is a certified lower bound.
    """
    a = np.asarray(matrix, dtype=np.int64)
    return max(rank_mod(a, p) for p in primes)


def projected_for_rank(a: np.ndarray, p: int, seed: int = 0, rows: int | None = None) -> np.ndarray:
    """Compress a tall matrix before a modular rank computation.

    Left-multiplying by a random matrix can only lose rank, so the rank
    of the projection is still a valid lower bound for the rank mod p
    (hence for the rational rank).  Coefficients live in [0, 4) and the
    product runs as an exact float64 BLAS call: summands are below
    3(p-1) and the row count below 2**16, keeping dot products under
    2**53.
    """
    m, n = a.shape
    target = (n if rows is None else rows) + 16
    if m <= target:
        return a
    if m >= 2**16:
        raise ValueError("matrix too tall for the exact projection bound")
    rng = np.random.default_rng(seed)
    g = rng.integers(0, 4, size=(target, m)).astype(np.float64)
    prod = g @ np.ascontiguousarray(a % p, dtype=np.float64)
    return np.mod(prod, p).astype(np.int64)
