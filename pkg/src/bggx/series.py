"""Truncated total-Chern-class series over a Schubert ring.

A GradedSeries keeps one homogeneous SchubertExpr per degree 0..D and all
arithmetic truncates above D. On a concrete Gr(k,q) the default D is the
dimension k(q-k), above which every class vanishes anyway.

The other half of this module builds universal Chern classes of symmetric
powers Sym^r of a rank-k bundle: expand the product over size-r multisets
of Chern roots, rewrite each degree in elementary symmetric polynomials
(exact Gauss elimination on the monomial-symmetric basis), and substitute
e_i -> (-1)^i sigma_{1^i} to land back in the Schubert ring.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import comb, factorial

from .coefpoly import CoefPoly
from .partitions import normalize
from .schur import GrassmannianContext, SchubertExpr, multiply, pieri_dual


class GradedSeries:
    """components[d] is the degree-d part; truncation degree D is fixed."""

    __slots__ = ("ctx", "D", "components")

    def __init__(self, ctx: GrassmannianContext, D: int, components=None):
        if D < 0:
            raise ValueError("truncation degree must be non-negative")
        self.ctx = ctx
        self.D = D
        comps = list(components) if components is not None else []
        while len(comps) < D + 1:
            comps.append(SchubertExpr.zero(ctx))
        if len(comps) != D + 1:
            raise ValueError("component list longer than D+1")
        for d, part in enumerate(comps):
            if part.ctx != ctx:
                raise ValueError("component context mismatch")
            for lam in part.terms:
                if sum(lam) != d:
                    raise ValueError(f"degree-{d} part holds |{lam}| != {d}")
        self.components = comps

    # ------------------------------------------------------------ builders

    @classmethod
    def unit(cls, ctx, D):
        s = cls(ctx, D)
        s.components[0] = SchubertExpr.unit(ctx)
        return s

    @classmethod
    def from_terms(cls, ctx, D, terms):
        comps = [dict() for _ in range(D + 1)]
        for lam, c in terms.items():
            lam = normalize(lam)
            d = sum(lam)
            if d <= D:
                comps[d][lam] = comps[d].get(lam, 0) + c
        return cls(ctx, D, [SchubertExpr(ctx, t) for t in comps])

    # ----------------------------------------------------------- accessors

    def coefficient(self, lam):
        lam = normalize(lam)
        d = sum(lam)
        if d > self.D:
            return 0
        return self.components[d].coefficient(lam)

    def constant_term(self):
        return self.components[0].coefficient(())

    def is_unit(self) -> bool:
        c = self.constant_term()
        return c == 1

    def terms(self):
        out = {}
        for part in self.components:
            out.update(part.terms)
        return out

    def __eq__(self, other):
        return (
            isinstance(other, GradedSeries)
            and self.ctx == other.ctx
            and self.D == other.D
            and self.components == other.components
        )

    def __repr__(self):
        bits = [repr(p) for p in self.components if not p.is_zero()]
        return " + ".join(bits) if bits else "0"

    # ---------------------------------------------------------- arithmetic

    def _check_compatible(self, other):
        if self.ctx != other.ctx or self.D != other.D:
            raise ValueError("series live over different contexts or degrees")

    def __add__(self, other):
        self._check_compatible(other)
        return GradedSeries(
            self.ctx,
            self.D,
            [a + b for a, b in zip(self.components, other.components)],
        )

    def __sub__(self, other):
        self._check_compatible(other)
        return GradedSeries(
            self.ctx,
            self.D,
            [a - b for a, b in zip(self.components, other.components)],
        )

    def scale(self, c):
        return GradedSeries(self.ctx, self.D, [p.scale(c) for p in self.components])

    def __mul__(self, other):
        if not isinstance(other, GradedSeries):
            return self.scale(other)
        self._check_compatible(other)
        out = [SchubertExpr.zero(self.ctx) for _ in range(self.D + 1)]
        for i, a in enumerate(self.components):
            if a.is_zero():
                continue
            for j, b in enumerate(other.components):
                if i + j > self.D:
                    break
                if b.is_zero():
                    continue
                out[i + j] = out[i + j] + multiply(a, b)
        return GradedSeries(self.ctx, self.D, out)

    __rmul__ = scale

    def to_json(self):
        return {
            "context": {"k": self.ctx.k,
                        "q": None if self.ctx.is_stable else self.ctx.q},
            "max_degree": self.D,
            "components": [p.to_json()["terms"] for p in self.components],
        }


# ------------------------------------------------------------- chern S, Q

def default_degree(ctx: GrassmannianContext, D=None) -> int:
    if D is not None:
        return D
    if ctx.is_stable:
        raise ValueError("stable context needs an explicit truncation degree")
    return ctx.k * ctx.width


def chern_S(ctx: GrassmannianContext, D=None) -> GradedSeries:
    """Total Chern class of the tautological subbundle: 1 + sum (-1)^i sigma_{1^i}."""
    D = default_degree(ctx, D)
    terms = {(): 1}
    for i in range(1, min(ctx.k, D) + 1):
        terms[(1,) * i] = (-1) ** i
    return GradedSeries.from_terms(ctx, D, terms)


def chern_Q(ctx: GrassmannianContext, D=None) -> GradedSeries:
    """Total Chern class of the quotient bundle: 1 + sigma_1 + sigma_2 + ..."""
    D = default_degree(ctx, D)
    top = D if ctx.is_stable else min(ctx.width, D)
    terms = {(): 1}
    for m in range(1, top + 1):
        terms[(m,)] = 1
    return GradedSeries.from_terms(ctx, D, terms)


# ------------------------------------------------------- series functions

def invert(s: GradedSeries) -> GradedSeries:
    """Multiplicative inverse of a series with constant term 1."""
    if not s.is_unit():
        raise ValueError("cannot invert a series whose constant term is not 1")
    ctx, D = s.ctx, s.D
    inv = [SchubertExpr.unit(ctx)]
    for d in range(1, D + 1):
        acc = SchubertExpr.zero(ctx)
        for i in range(1, d + 1):
            if s.components[i].is_zero():
                continue
            acc = acc + multiply(s.components[i], inv[d - i])
        inv.append(-acc)
    return GradedSeries(ctx, D, inv)


def log_series(s: GradedSeries) -> GradedSeries:
    """Formal log of a series with constant term 1."""
    if not s.is_unit():
        raise ValueError("log needs constant term 1")
    ctx, D = s.ctx, s.D
    u = GradedSeries(ctx, D, [SchubertExpr.zero(ctx)] + s.components[1:])
    total = GradedSeries(ctx, D)
    power = GradedSeries.unit(ctx, D)
    for m in range(1, D + 1):
        power = power * u
        total = total + power.scale(Fraction((-1) ** (m + 1), m))
    return total


def exp_series(s: GradedSeries) -> GradedSeries:
    """Formal exp of a series with zero constant term."""
    if s.constant_term() != 0:
        raise ValueError("exp needs zero constant term")
    ctx, D = s.ctx, s.D
    total = GradedSeries.unit(ctx, D)
    power = GradedSeries.unit(ctx, D)
    for m in range(1, D + 1):
        power = power * s
        total = total + power.scale(Fraction(1, factorial(m)))
    return total


def pow_symbolic(s: GradedSeries, exponent) -> GradedSeries:
    """s**e for e an integer (repeated multiplication / inversion) or a
    CoefPoly symbol, realized as exp(e * log s)."""
    if not s.is_unit():
        raise ValueError("powers need constant term 1")
    if isinstance(exponent, int):
        base = invert(s) if exponent < 0 else s
        out = GradedSeries.unit(s.ctx, s.D)
        for _ in range(abs(exponent)):
            out = out * base
        return out
    if isinstance(exponent, CoefPoly):
        return exp_series(log_series(s).scale(exponent))
    raise TypeError(f"unsupported exponent {exponent!r}")


def evaluate_coeffs(s: GradedSeries, **assignments) -> GradedSeries:
    """Substitute rational values for the symbols in CoefPoly coefficients."""
    comps = []
    for part in s.components:
        terms = {}
        for lam, c in part.terms.items():
            terms[lam] = c.evaluate(**assignments) if isinstance(c, CoefPoly) else c
        comps.append(SchubertExpr(s.ctx, terms))
    return GradedSeries(s.ctx, s.D, comps)


# -------------------------------------------- symmetric powers via roots

def _poly_mul(a, b, k, cap):
    out = {}
    for e1, c1 in a.items():
        d1 = sum(e1)
        for e2, c2 in b.items():
            if d1 + sum(e2) > cap:
                continue
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _elementary_poly(i, k):
    out = {}
    for sub in combinations(range(k), i):
        e = [0] * k
        for s in sub:
            e[s] = 1
        out[tuple(e)] = 1
    return out


def _monomial_pattern(exps):
    return tuple(sorted((e for e in exps if e), reverse=True))


def _to_m_basis(poly, degree, k):
    """Collect a symmetric polynomial's degree slice by monomial pattern,
    verifying the symmetry on the way."""
    groups = {}
    for exps, c in poly.items():
        if sum(exps) != degree:
            continue
        groups.setdefault(_monomial_pattern(exps), []).append(c)
    out = {}
    for pat, cs in groups.items():
        distinct = _orbit_size(pat, k)
        if len(cs) != distinct or any(c != cs[0] for c in cs):
            raise ArithmeticError(f"expansion not symmetric at pattern {pat}")
        out[pat] = cs[0]
    return out


def _orbit_size(pattern, k):
    # number of distinct exponent vectors in k variables with this pattern
    mults = {}
    for p in pattern:
        mults[p] = mults.get(p, 0) + 1
    zeros = k - len(pattern)
    mults[0] = mults.get(0, 0) + zeros
    total = factorial(k)
    for m in mults.values():
        total //= factorial(m)
    return total


def _partitions_with_parts_at_most(n, maxpart):
    if n == 0:
        yield ()
        return
    for first in range(min(n, maxpart), 0, -1):
        for rest in _partitions_with_parts_at_most(n - first, first):
            yield (first,) + rest


_E_MONOMIAL_M_CACHE: dict = {}


def _e_monomial_in_m_basis(kappa, k):
    """Expansion of prod e_{kappa_i} into the monomial-symmetric basis."""
    key = (kappa, k)
    hit = _E_MONOMIAL_M_CACHE.get(key)
    if hit is not None:
        return hit
    poly = {(0,) * k: 1}
    for part in kappa:
        poly = _poly_mul(poly, _elementary_poly(part, k), k, sum(kappa))
    res = _to_m_basis(poly, sum(kappa), k)
    _E_MONOMIAL_M_CACHE[key] = res
    return res


def _solve_exact(matrix, rhs):
    """Gauss elimination over Fractions; matrix is square and invertible."""
    n = len(matrix)
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise ArithmeticError("basis-conversion system is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = Fraction(1) / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


class SymChernTable:
    """c(Sym^r E) for any rank-k bundle E, written in e_1..e_k = c_i(E).

    entries[d] maps an exponent tuple over (e_1, ..., e_k) to a Fraction;
    degrees beyond the rank of Sym^r are identically zero.
    """

    __slots__ = ("k", "r", "D", "entries")

    def __init__(self, k, r, D, entries):
        self.k = k
        self.r = r
        self.D = D
        self.entries = entries
        if entries[0] != {(0,) * k: Fraction(1)}:
            raise ArithmeticError("degree-0 entry of a Chern series must be 1")

    def to_json(self):
        return {
            "rank": self.k,
            "power": self.r,
            "max_degree": self.D,
            "entries": [
                [
                    {"monomial": list(e), "coeff": str(c)}
                    for e, c in sorted(slice_.items())
                ]
                for slice_ in self.entries
            ],
        }


_SYM_TABLE_CACHE: dict = {}


def sym_power_chern(k: int, r: int, D=None) -> SymChernTable:
    """Chern class of Sym^r of a rank-k bundle, through degree D."""
    if k < 1 or r < 1:
        raise ValueError("need k >= 1 and r >= 1")
    rank = comb(k + r - 1, r)
    if D is None:
        D = rank
    key = (k, r, D)
    hit = _SYM_TABLE_CACHE.get(key)
    if hit is not None:
        return hit

    cap = min(D, rank)
    # product over size-r multisets of roots of (1 + x_{i1} + ... + x_{ir})
    poly = {(0,) * k: 1}
    for multiset in combinations_with_replacement(range(k), r):
        factor = {(0,) * k: 1}
        for i in multiset:
            e = [0] * k
            e[i] = 1
            factor[tuple(e)] = factor.get(tuple(e), 0) + 1
        poly = _poly_mul(poly, factor, k, cap)

    entries = []
    for d in range(D + 1):
        if d > cap:
            entries.append({})
            continue
        target = _to_m_basis(poly, d, k)
        kappas = list(_partitions_with_parts_at_most(d, k))
        patterns = sorted(
            {pat for kap in kappas for pat in _e_monomial_in_m_basis(kap, k)}
        )
        if set(target) - set(patterns):
            raise ArithmeticError(f"degree-{d} slice outside the e-span")
        matrix = []
        for pat in patterns:
            matrix.append(
                [_e_monomial_in_m_basis(kap, k).get(pat, 0) for kap in kappas]
            )
        rhs = [target.get(pat, 0) for pat in patterns]
        sol = _solve_exact(matrix, rhs)
        slice_ = {}
        for kap, c in zip(kappas, sol):
            if c:
                exps = [0] * k
                for part in kap:
                    exps[part - 1] += 1
                slice_[tuple(exps)] = c
        entries.append(slice_)

    table = SymChernTable(k, r, D, entries)
    _SYM_TABLE_CACHE[key] = table
    return table


# -------------------------------------------------- back to Schubert land

_E_MONOMIAL_SIGMA_CACHE: dict = {}


def e_monomial_sigma(exps, ctx: GrassmannianContext) -> SchubertExpr:
    """prod e_i^{a_i} with e_i -> c_i(S) = (-1)^i sigma_{1^i}, as an expression.

    The sign is (-1)^(weighted degree); the product itself is a chain of
    column-class multiplications (vertical strips), which is fast."""
    key = (ctx, tuple(exps))
    hit = _E_MONOMIAL_SIGMA_CACHE.get(key)
    if hit is not None:
        return hit
    expr = SchubertExpr.unit(ctx)
    degree = 0
    for i, a in enumerate(exps, start=1):
        degree += i * a
        for _ in range(a):
            acc = {}
            for lam, c in expr.terms.items():
                for nu, m in pieri_dual(lam, i, ctx).terms.items():
                    acc[nu] = acc.get(nu, 0) + c * m
            expr = SchubertExpr(ctx, acc)
    expr = expr.scale((-1) ** degree)
    _E_MONOMIAL_SIGMA_CACHE[key] = expr
    return expr


def substitute(table: SymChernTable, ctx: GrassmannianContext, D=None) -> GradedSeries:
    """Specialize a symmetric-power table to c(Sym^r S) on the given context."""
    if table.k != ctx.k:
        raise ValueError(f"table rank {table.k} != context k {ctx.k}")
    D = default_degree(ctx, D)
    rank = comb(table.k + table.r - 1, table.r)
    if table.D < min(D, rank):
        raise ValueError("table truncated below the requested series degree")
    comps = []
    for d in range(D + 1):
        part = SchubertExpr.zero(ctx)
        if d < len(table.entries):
            for exps, c in table.entries[d].items():
                part = part + e_monomial_sigma(exps, ctx).scale(c)
        comps.append(part)
    return GradedSeries(ctx, D, comps)
