"""Derivative complexes from a Hodge-theoretic datum and a subspace W.

A :class:`HodgeDatum` packages the dimensions h[i][j] of the graded
pieces H^j(Omega^i) together with, for each basis vector v_a of the
q-dimensional space V, the matrices of "wedge with v_a".  Given a
k-dimensional subspace W of V with a chosen basis (w_1..w_k), the
complex with parameters (r, j) has terms

    Sym^{r-i} W (x) H^j(Omega^i),   i = 0..n,  n = min(r, d),

and differentials sending a monomial w_{t_1}...w_{t_m} (x) alpha to the
sum over distinct members t of the monomial with one t removed, tensor
w_t wedge alpha, weighted by the multiplicity of t.

Matrices are held as sparse int64 with one global rational scale per
map (denominators of W and of the datum are cleared once), so rank and
homology computations run on integers and remain exact.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, lcm
from typing import Iterable, Mapping, Sequence

import numpy as np
import scipy.sparse as sp

from .ratlinalg import MOD_PRIMES, projected_for_rank, rank_exact, rank_mod


class DataError(ValueError):
    """Malformed or inconsistent input data (as opposed to usage errors)."""


def _fr(x) -> Fraction:
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


class SparseRat:
    """Sparse exact-rational matrix: a shape plus the nonzero entries."""

    __slots__ = ("shape", "entries")

    def __init__(self, shape, entries: Mapping | None = None):
        m, n = int(shape[0]), int(shape[1])
        if m < 0 or n < 0:
            raise ValueError("negative matrix dimension")
        self.shape = (m, n)
        clean = {}
        for (r, c), v in (entries or {}).items():
            v = _fr(v)
            if not (0 <= r < m and 0 <= c < n):
                raise ValueError(f"entry ({r},{c}) outside shape {self.shape}")
            if v:
                clean[(int(r), int(c))] = v
        self.entries = clean

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence]) -> "SparseRat":
        m = len(rows)
        n = len(rows[0]) if m else 0
        ent = {}
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError("ragged matrix")
            for j, v in enumerate(row):
                v = _fr(v)
                if v:
                    ent[(i, j)] = v
        return cls((m, n), ent)

    def is_zero(self) -> bool:
        return not self.entries

    def compose(self, other: "SparseRat") -> "SparseRat":
        """self @ other."""
        if self.shape[1] != other.shape[0]:
            raise ValueError("shape mismatch in composition")
        by_row: dict[int, list[tuple[int, Fraction]]] = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out: dict[tuple[int, int], Fraction] = {}
        for (r, mid), v in self.entries.items():
            for c, w in by_row.get(mid, ()):
                key = (r, c)
                out[key] = out.get(key, Fraction(0)) + v * w
        return SparseRat((self.shape[0], other.shape[1]), out)

    def plus(self, other: "SparseRat") -> "SparseRat":
        if self.shape != other.shape:
            raise ValueError("shape mismatch in sum")
        out = dict(self.entries)
        for key, v in other.entries.items():
            out[key] = out.get(key, Fraction(0)) + v
        return SparseRat(self.shape, out)

    def dense(self) -> list[list[Fraction]]:
        m, n = self.shape
        rows = [[Fraction(0)] * n for _ in range(m)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return rows

    def denominator_lcm(self) -> int:
        dens = [v.denominator for v in self.entries.values()]
        return lcm(*dens) if dens else 1

    def __eq__(self, other):
        return (
            isinstance(other, SparseRat)
            and self.shape == other.shape
            and self.entries == other.entries
        )


class SubspaceW:
    """A k-dimensional subspace of V given by k independent basis columns.

    Each column has length q and exact rational coordinates in the
    v_a basis of V.
    """

    __slots__ = ("q", "k", "columns")

    def __init__(self, columns: Sequence[Sequence]):
        cols = tuple(tuple(_fr(x) for x in col) for col in columns)
        if not cols:
            raise ValueError("W needs at least one basis vector")
        q = len(cols[0])
        if any(len(c) != q for c in cols):
            raise ValueError("ragged basis columns")
        self.q = q
        self.k = len(cols)
        self.columns = cols
        if self.k > q or rank_exact(list(zip(*cols))) != self.k:
            raise ValueError("basis columns are linearly dependent")

    @classmethod
    def full_space(cls, q: int) -> "SubspaceW":
        return cls([[1 if a == t else 0 for a in range(q)] for t in range(q)])

    def times(self, g: Sequence[Sequence]) -> "SubspaceW":
        """Replace the basis by W.g for an invertible k x k matrix g."""
        rows = [[_fr(x) for x in row] for row in g]
        if len(rows) != self.k or any(len(r) != self.k for r in rows):
            raise ValueError("basis change must be k x k")
        if rank_exact(rows) != self.k:
            raise ValueError("singular basis change")
        new_cols = [
            [
                sum((self.columns[t][a] * rows[t][s] for t in range(self.k)), Fraction(0))
                for a in range(self.q)
            ]
            for s in range(self.k)
        ]
        return SubspaceW(new_cols)

    def to_json(self) -> dict:
        return {"columns": [[str(x) for x in col] for col in self.columns]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "SubspaceW":
        return cls(obj["columns"])


class HodgeDatum:
    """Graded dimensions plus the wedge action of a basis of V.

    dims[i][j] = dim H^j(Omega^i) for 0 <= i, j <= d.  The action maps
    (a, i, j), with a in 1..q, to the matrix of wedging with v_a from
    H^j(Omega^i) to H^j(Omega^{i+1}); absent matrices are zero.
    """

    __slots__ = ("d", "q", "dims", "action", "metadata")

    def __init__(self, d, q, dims, action, metadata=None):
        self.d = int(d)
        self.q = int(q)
        if self.d < 1 or self.q < 1:
            raise DataError("need d >= 1 and q >= 1")
        table = tuple(tuple(int(x) for x in row) for row in dims)
        if len(table) != self.d + 1 or any(len(r) != self.d + 1 for r in table):
            raise DataError("dims must be a (d+1) x (d+1) table")
        if any(x < 0 for row in table for x in row):
            raise DataError("negative dimension in dims")
        if table[0][0] < 1:
            raise DataError("h[0][0] must be at least 1")
        if table[1][0] != self.q:
            raise DataError("h[1][0] must equal q")
        self.dims = table

        acts: dict[tuple[int, int, int], SparseRat] = {}
        for (a, i, j), mat in dict(action).items():
            a, i, j = int(a), int(i), int(j)
            if not (1 <= a <= self.q):
                raise DataError(f"action index a={a} outside 1..q")
            if not (0 <= i < self.d and 0 <= j <= self.d):
                raise DataError(f"action position (i={i}, j={j}) out of range")
            if not isinstance(mat, SparseRat):
                mat = SparseRat.from_dense(mat)
            want = (table[i + 1][j], table[i][j])
            if mat.shape != want:
                raise DataError(
                    f"action matrix (a={a}, i={i}, j={j}) has shape "
                    f"{mat.shape}, expected {want}"
                )
            if not mat.is_zero():
                acts[(a, i, j)] = mat
        self.action = acts
        self.metadata = dict(metadata or {})

    def action_matrix(self, a, i, j) -> SparseRat:
        want = (self.dims[i + 1][j], self.dims[i][j])
        mat = self.action.get((a, i, j))
        return mat if mat is not None else SparseRat(want)

    def check_anticommutation(self):
        """First (a, b, i, j) with M_a M_b + M_b M_a != 0, or None."""
        for i in range(self.d - 1):
            for j in range(self.d + 1):
                for a in range(1, self.q + 1):
                    for b in range(a, self.q + 1):
                        ab = self.action_matrix(a, i + 1, j).compose(
                            self.action_matrix(b, i, j)
                        )
                        ba = self.action_matrix(b, i + 1, j).compose(
                            self.action_matrix(a, i, j)
                        )
                        if not ab.plus(ba).is_zero():
                            return (a, b, i, j)
        return None

    def to_json(self) -> dict:
        action = []
        for (a, i, j) in sorted(self.action):
            mat = self.action[(a, i, j)]
            item = {"a": a, "i": i, "j": j}
            if mat.shape[0] * mat.shape[1] <= 1600:
                item["matrix"] = [[str(v) for v in row] for row in mat.dense()]
            else:
                item["entries"] = [
                    [r, c, str(v)] for (r, c), v in sorted(mat.entries.items())
                ]
            action.append(item)
        return {
            "d": self.d,
            "q": self.q,
            "dims": [list(row) for row in self.dims],
            "action": action,
            "metadata": dict(self.metadata),
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "HodgeDatum":
        try:
            d, q = int(obj["d"]), int(obj["q"])
            dims = obj["dims"]
            action = {}
            for item in obj.get("action", ()):
                a, i, j = int(item["a"]), int(item["i"]), int(item["j"])
                if "matrix" in item:
                    mat = SparseRat.from_dense(item["matrix"])
                else:
                    shape = (int(dims[i + 1][j]), int(dims[i][j]))
                    ent = {(int(r), int(c)): Fraction(v) for r, c, v in item["entries"]}
                    mat = SparseRat(shape, ent)
                action[(a, i, j)] = mat
            return cls(d, q, dims, action, obj.get("metadata"))
        except DataError:
            raise
        except (KeyError, IndexError, TypeError, ValueError) as exc:
            raise DataError(f"malformed datum JSON: {exc}") from exc


def _sym_basis(k: int, m: int) -> list[tuple[int, ...]]:
    """Monomial basis of Sym^m on k letters: size-m multisets, lex order."""
    return list(itertools.combinations_with_replacement(range(k), m))


def _contraction(k: int, m: int, t: int) -> sp.csr_matrix:
    """Matrix of d/d(w_t): Sym^m -> Sym^{m-1}, entry = multiplicity of t."""
    src = _sym_basis(k, m)
    dst_index = {ms: i for i, ms in enumerate(_sym_basis(k, m - 1))}
    rows, cols, vals = [], [], []
    for col, ms in enumerate(src):
        mult = ms.count(t)
        if mult:
            removed = list(ms)
            removed.remove(t)
            rows.append(dst_index[tuple(removed)])
            cols.append(col)
            vals.append(mult)
    return sp.csr_matrix(
        (vals, (rows, cols)), shape=(len(dst_index), len(src)), dtype=np.int64
    )


@functools.lru_cache(maxsize=None)
def _contraction_coo(k: int, m: int, t: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Coordinate form of :func:`_contraction`, cached; callers must not mutate."""
    mat = _contraction(k, m, t).tocoo()
    return (
        mat.row.astype(np.int64),
        mat.col.astype(np.int64),
        mat.data.astype(np.int64),
    )


@dataclass(frozen=True)
class ComplexOfMatrices:
    """Terms and integer differentials of one derivative complex.

    maps[i] is the matrix of the i-th differential (term i to term i+1)
    times the inverse of map_scales[i]; ranks and homology only ever see
    the integer part, the scale matters for printing exact entries.
    """

    term_dims: tuple[int, ...]
    maps: tuple = field(hash=False)
    map_scales: tuple[Fraction, ...] = field(hash=False)
    labels: tuple = ()

    @property
    def n_terms(self) -> int:
        return len(self.term_dims)

    def map_dense(self, i: int) -> list[list[Fraction]]:
        """Exact rational entries of the i-th differential."""
        s = self.map_scales[i]
        return [[x * s for x in row] for row in self.maps[i].toarray().tolist()]


def _compose_is_zero(later: sp.csr_matrix, earlier: sp.csr_matrix) -> bool:
    mx_l = int(abs(later.data).max()) if later.nnz else 0
    mx_e = int(abs(earlier.data).max()) if earlier.nnz else 0
    if mx_l * mx_e * max(later.shape[1], 1) < 2**62:
        return (later @ earlier).count_nonzero() == 0
    # int64 could overflow: redo the product in exact big-int arithmetic
    lc = later.tocoo()
    a = SparseRat(later.shape, {(r, c): int(v) for r, c, v in zip(lc.row, lc.col, lc.data)})
    ec = earlier.tocoo()
    b = SparseRat(earlier.shape, {(r, c): int(v) for r, c, v in zip(ec.row, ec.col, ec.data)})
    return a.compose(b).is_zero()


def build_complex(datum: HodgeDatum, W: SubspaceW, r: int, j: int) -> ComplexOfMatrices:
    """Assemble the (r, j) complex over W with exact integer matrices.

    The length is always n = min(r, d).  Composition of consecutive
    differentials is asserted to vanish; a violation is diagnosed back
    to the first anticommutation failure in the datum.
    """
    if W.q != datum.q:
        raise ValueError(f"W lives in dimension {W.q}, datum has q={datum.q}")
    if r < 1:
        raise ValueError("need r >= 1")
    if not (0 <= j <= datum.d):
        raise ValueError(f"need 0 <= j <= d={datum.d}")
    k = W.k
    n = min(r, datum.d)

    w_den = lcm(*(x.denominator for col in W.columns for x in col))
    used = [datum.action.get((a, i, j)) for i in range(n) for a in range(1, datum.q + 1)]
    m_den = lcm(*(m.denominator_lcm() for m in used if m is not None)) if any(used) else 1
    w_int = [[int(x * w_den) for x in col] for col in W.columns]
    scale = Fraction(1, w_den * m_den)

    term_dims = [comb(r - i + k - 1, k - 1) * datum.dims[i][j] for i in range(n + 1)]

    maps = []
    for i in range(n):
        h_src, h_dst = datum.dims[i][j], datum.dims[i + 1][j]
        shape = (comb(r - i - 1 + k - 1, k - 1) * h_dst, comb(r - i + k - 1, k - 1) * h_src)
        # integer entries per action matrix, flattened keys, computed once
        acts = []
        for a in range(1, datum.q + 1):
            mat = datum.action.get((a, i, j))
            if mat is None or not mat.entries:
                acts.append(None)
            else:
                acts.append(
                    [(rr * h_src + cc, int(v * m_den)) for (rr, cc), v in mat.entries.items()]
                )
        rows_parts: list[np.ndarray] = []
        cols_parts: list[np.ndarray] = []
        vals_parts: list[np.ndarray] = []
        for t in range(k):
            acc: dict[int, int] = {}
            for a0 in range(datum.q):
                coeff = w_int[t][a0]
                ent = acts[a0]
                if coeff == 0 or ent is None:
                    continue
                for key, iv in ent:
                    acc[key] = acc.get(key, 0) + coeff * iv
            if not acc:
                continue
            ctr, ctc, ctv = _contraction_coo(k, r - i, t)
            mx = max(abs(v) for v in acc.values())
            if mx and int(ctv.max()) * mx * (k + 1) >= 2**62:
                raise ValueError("matrix entries too large for int64 assembly")
            m_at = len(acc)
            at_key = np.fromiter(acc.keys(), dtype=np.int64, count=m_at)
            at_val = np.fromiter(acc.values(), dtype=np.int64, count=m_at)
            # kron(C_t, A_t) written out directly in coordinate form
            rows_parts.append((ctr[:, None] * h_dst + at_key[None, :] // h_src).ravel())
            cols_parts.append((ctc[:, None] * h_src + at_key[None, :] % h_src).ravel())
            vals_parts.append((ctv[:, None] * at_val[None, :]).ravel())
        if rows_parts:
            total = sp.csr_matrix(
                (np.concatenate(vals_parts), (np.concatenate(rows_parts), np.concatenate(cols_parts))),
                shape=shape,
                dtype=np.int64,
            )
            total.eliminate_zeros()
        else:
            total = sp.csr_matrix(shape, dtype=np.int64)
        maps.append(total)

    for i in range(n - 1):
        if not _compose_is_zero(maps[i + 1], maps[i]):
            viol = datum.check_anticommutation()
            if viol is not None:
                a, b, vi, vj = viol
                raise DataError(
                    "consecutive differentials do not compose to zero; "
                    f"the datum violates anticommutation at (a={a}, b={b}, "
                    f"i={vi}, j={vj})"
                )
            raise RuntimeError("composition-zero failed with a consistent datum")

    return ComplexOfMatrices(
        term_dims=tuple(term_dims),
        maps=tuple(maps),
        map_scales=tuple([scale] * n),
        labels=(r, j, n, "multiset-lex"),
    )


_DENSE_RANK_LIMIT = 60_000_000


def _as_int_array(mat: sp.csr_matrix) -> np.ndarray:
    if mat.shape[0] * mat.shape[1] > _DENSE_RANK_LIMIT:
        raise ValueError(
            f"matrix of shape {mat.shape} is too large for a dense rank; "
            "restrict the requested homology window"
        )
    return np.asarray(mat.toarray(), dtype=np.int64)


def _rank_exact_csr(mat: sp.csr_matrix) -> int:
    if min(mat.shape) == 0 or mat.nnz == 0:
        return 0
    return rank_exact(_as_int_array(mat))


def _cert_rank_lb(mat: sp.csr_matrix, p: int, needed: int, attempt: int) -> int:
    """Modular lower bound for rank(mat), tuned to certify >= needed.

    Rows and columns far beyond `needed` are compressed away by random
    small-coefficient projections (sparse-aware products, exact in
    int64 / float64), which can only lose rank and so keep the result a
    valid lower bound.  attempt > 0 redraws the projections; the last
    attempt skips them entirely.
    """
    if min(mat.shape) == 0 or mat.nnz == 0:
        return 0
    rows, cols = mat.shape
    t = needed + 16
    seed = (attempt * 0x9E3779B1 + rows * 1000003 + cols) & 0x7FFFFFFF
    rng = np.random.default_rng(seed)
    project = attempt < 2 and needed + 32 < max(rows, cols)

    if project:
        work = mat.copy()
        work.data = work.data % p
        dense = None
        if rows > needed + 32:
            # g @ work, computed as (work.T @ g.T).T to use the csc path;
            # summands < 3p with < 2**16 of them: exact in int64
            g_t = rng.integers(0, 4, size=(rows, min(t, rows)), dtype=np.int64)
            dense = np.ascontiguousarray((work.T @ g_t).T) % p
        if cols > needed + 32:
            h = rng.integers(0, 4, size=(cols, min(t, cols)))
            if dense is None:
                dense = (work @ h) % p
            else:
                # dense (< p) against tiny coefficients: dot products
                # stay below 3p * cols < 2**53, exact in float64
                prod = dense.astype(np.float64) @ h.astype(np.float64)
                dense = np.mod(prod, p).astype(np.int64)
        if dense is not None:
            return rank_mod(dense, p)
    return rank_mod(_as_int_array(mat), p)


def _certified_walk(c: ComplexOfMatrices, stop_at, method: str):
    """Homology positions in order, stopping early where possible.

    Yields (position, h_i) with exact h_i.  The fast path certifies
    h_i = 0 from a modular rank lower bound: homology over Q is
    non-negative and modular rank never exceeds rational rank, so a
    lower bound that accounts for the full dimension pins both the
    vanishing and the exact rank used at the next position.  Positions
    the primes cannot certify fall back to fraction-free exact ranks.
    """
    n = len(c.maps)
    limit = n + 1 if stop_at is None else min(stop_at, n + 1)
    r_prev = 0
    for i in range(limit):
        d_i = c.term_dims[i]
        if i == n:
            yield i, d_i - r_prev
            return
        mat = c.maps[i]
        r_i = None
        if method == "auto":
            needed = d_i - r_prev
            ladder = ((0, MOD_PRIMES[0]), (1, MOD_PRIMES[1]), (2, MOD_PRIMES[0]))
            for attempt, p in ladder:
                lb = _cert_rank_lb(mat, p, needed, attempt)
                if lb == needed:
                    r_i = lb
                    break
        if r_i is None:
            r_i = _rank_exact_csr(mat)
        h_i = d_i - r_i - r_prev
        if h_i < 0:
            raise RuntimeError("negative homology dimension; rank bookkeeping bug")
        yield i, h_i
        r_prev = r_i


def homology_dims(c: ComplexOfMatrices, method: str = "auto") -> tuple[int, ...]:
    """Exact homology dimensions at every position, cokernel included.

    method="exact" forces fraction-free elimination throughout;
    method="auto" uses modular certificates where they pin the answer
    and falls back to exact elimination elsewhere.  Both return exact
    values.  The Euler-characteristic identity is asserted on each run.
    """
    if method not in ("auto", "exact"):
        raise ValueError("method must be 'auto' or 'exact'")
    dims = [h for _, h in _certified_walk(c, None, method)]
    lhs = sum((-1) ** i * d for i, d in enumerate(c.term_dims))
    rhs = sum((-1) ** i * h for i, h in enumerate(dims))
    if lhs != rhs:
        raise RuntimeError("Euler characteristic mismatch; rank bookkeeping bug")
    return tuple(dims)


def exactness_prefix(c: ComplexOfMatrices, stop_at=None, method: str = "auto") -> int:
    """Number of leading positions with vanishing homology.

    With stop_at=t the walk ends after t positions, returning min(t,
    true prefix); that is enough to decide "prefix >= t" without
    touching the larger matrices deeper in the complex.
    """
    if method not in ("auto", "exact"):
        raise ValueError("method must be 'auto' or 'exact'")
    prefix = 0
    for _, h in _certified_walk(c, stop_at, method):
        if h:
            break
        prefix += 1
    return prefix


@dataclass(frozen=True)
class E2Table:
    """Homology dimensions e[i][j] over one W, with antidiagonal sums."""

    r: int
    entries: tuple[tuple[int, ...], ...]  # indexed [i][j]
    hyper: tuple[int, ...]

    def nonzero(self) -> list[tuple[int, int, int]]:
        return [
            (i, j, e)
            for i, row in enumerate(self.entries)
            for j, e in enumerate(row)
            if e
        ]

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "entries": [list(row) for row in self.entries],
            "hyper": list(self.hyper),
        }


def e2_table(datum: HodgeDatum, W: SubspaceW, r: int, method: str = "auto") -> E2Table:
    """Homology of the (r, j) complexes for all j, plus antidiagonals."""
    n = min(r, datum.d)
    cols = []
    for j in range(datum.d + 1):
        cols.append(homology_dims(build_complex(datum, W, r, j), method=method))
    entries = tuple(tuple(cols[j][i] for j in range(datum.d + 1)) for i in range(n + 1))
    hyper = tuple(
        sum(entries[i][m - i] for i in range(n + 1) if 0 <= m - i <= datum.d)
        for m in range(n + datum.d + 1)
    )
    return E2Table(r=r, entries=entries, hyper=hyper)


def basis_change_invariance_check(
    datum: HodgeDatum, W: SubspaceW, g: Sequence[Sequence], r: int, j: int
) -> bool:
    """Homology dims computed over W and over W.g agree (they must)."""
    base = homology_dims(build_complex(datum, W, r, j))
    changed = homology_dims(build_complex(datum, W.times(g), r, j))
    return base == changed
