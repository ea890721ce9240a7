"""Concrete Hodge data: the abelian exterior-algebra model and the
product-of-genus-3-curves example, plus the exactness battery that
exercises the complexes against the expected theorem bound.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .complexes import (
    HodgeDatum,
    SparseRat,
    SubspaceW,
    build_complex,
    exactness_prefix,
)
from .ratlinalg import rank_exact


def expected_exactness(d: int, k: int, j: int) -> int:
    """Leading exactness the main bound promises: max(0, d - k - j + 1).

    A complex with only min(r, d) differentials cannot witness more
    than r leading steps, so batteries compare against
    min(expected_exactness(d, k, j), r).
    """
    return max(0, d - k - j + 1)


def abelian_model(q: int) -> HodgeDatum:
    """Exterior-algebra datum of a q-dimensional abelian variety.

    H^j(Omega^i) is realized as Lambda^i V (x) Lambda^j Vbar with the
    wedge-monomial basis; v_a acts by left exterior multiplication on
    the first factor (Koszul sign = parity of the number of indices in
    the monomial smaller than a) and by the identity on the second.
    """
    if q < 1:
        raise ValueError("need q >= 1")
    d = q
    dims = [[comb(q, i) * comb(q, j) for j in range(d + 1)] for i in range(d + 1)]

    wedge_index = [
        {mono: pos for pos, mono in enumerate(itertools.combinations(range(q), i))}
        for i in range(q + 1)
    ]
    action = {}
    for a in range(1, q + 1):
        for i in range(d):
            # left multiplication on Lambda^i V
            ins = {}
            for mono, col in wedge_index[i].items():
                if (a - 1) in mono:
                    continue
                smaller = sum(1 for s in mono if s < a - 1)
                target = tuple(sorted(mono + (a - 1,)))
                ins[(wedge_index[i + 1][target], col)] = (-1) ** smaller
            if not ins:
                continue
            for j in range(d + 1):
                nj = comb(q, j)
                ent = {
                    (rr * nj + t, cc * nj + t): v
                    for (rr, cc), v in ins.items()
                    for t in range(nj)
                }
                action[(a, i, j)] = SparseRat((dims[i + 1][j], dims[i][j]), ent)
    return HodgeDatum(
        d,
        q,
        dims,
        action,
        metadata={
            "model": "abelian variety, exterior algebra on q translation-invariant forms",
            "nondegeneracy": "every subspace W is non-degenerate "
            "(translation-invariant 1-forms have no zeros)",
        },
    )


# Curve-level graded pieces for one genus-3 curve: positions (i, j) with
# i, j in {0, 1}; dims 1, 3, 3, 1.  Wedging with the t-th holomorphic
# form sends the generator of H^0(O) to that form, and pairs H^1(O)
# against H^1(omega) through the chosen duality matrix.
_CURVE_DIMS = {(0, 0): 1, (1, 0): 3, (0, 1): 3, (1, 1): 1}


def _curve_wedge(t: int, i: int, j: int, pairing) -> SparseRat | None:
    if i != 0:
        return None  # Omega^2 of a curve is zero
    if j == 0:
        return SparseRat((3, 1), {(t, 0): 1})
    return SparseRat((1, 3), {(0, s): pairing[t][s] for s in range(3)})


def curves_product_model(h1_basis=None) -> tuple[HodgeDatum, SubspaceW]:
    """Datum for a product of two genus-3 curves, with its subspace W.

    Graded pieces come from tensor products of the curve-level groups;
    the action of the a-th basis 1-form goes through the first factor
    for a <= 3 and through the second with the Koszul sign
    (-1)^(total degree of the first-factor piece) for a >= 4.  W is
    spanned by the three sums (a-th form on factor one) + (a-th form
    on factor two).

    h1_basis, when given, is a pair of invertible 3x3 rational
    matrices replacing the duality-dual basis of each curve's H^1(O);
    homology dimensions must not depend on that choice.
    """
    pairings = []
    for which in range(2):
        if h1_basis is None:
            pairings.append([[Fraction(int(t == s)) for s in range(3)] for t in range(3)])
        else:
            p = [[Fraction(x) for x in row] for row in h1_basis[which]]
            if len(p) != 3 or any(len(row) != 3 for row in p) or rank_exact(p) != 3:
                raise ValueError("h1_basis entries must be invertible 3x3 matrices")
            pairings.append(p)

    d = 2
    q = 6
    pieces = [(i, j) for i in (0, 1) for j in (0, 1)]

    def blocks(I, J):
        """Kunneth blocks of H^J(Omega^I), ordered by the first factor."""
        out = []
        for (i1, j1) in pieces:
            i2, j2 = I - i1, J - j1
            if (i2, j2) in _CURVE_DIMS:
                out.append((i1, j1, i2, j2))
        return out

    def offsets(I, J):
        offs, pos = {}, 0
        for blk in blocks(I, J):
            offs[blk] = pos
            i1, j1, i2, j2 = blk
            pos += _CURVE_DIMS[(i1, j1)] * _CURVE_DIMS[(i2, j2)]
        return offs, pos

    dims = [[offsets(I, J)[1] for J in range(d + 1)] for I in range(d + 1)]

    action = {}
    for a in range(1, q + 1):
        through_first = a <= 3
        t = (a - 1) if through_first else (a - 4)
        for I in range(d):
            for J in range(d + 1):
                src_off, src_dim = offsets(I, J)
                dst_off, dst_dim = offsets(I + 1, J)
                ent = {}
                for (i1, j1, i2, j2), off in src_off.items():
                    n1, n2 = _CURVE_DIMS[(i1, j1)], _CURVE_DIMS[(i2, j2)]
                    if through_first:
                        w = _curve_wedge(t, i1, j1, pairings[0])
                        tgt = (i1 + 1, j1, i2, j2)
                        if w is None or tgt not in dst_off:
                            continue
                        base = dst_off[tgt]
                        for (rr, cc), v in w.entries.items():
                            for s in range(n2):
                                ent[(base + rr * n2 + s, off + cc * n2 + s)] = v
                    else:
                        w = _curve_wedge(t, i2, j2, pairings[1])
                        tgt = (i1, j1, i2 + 1, j2)
                        if w is None or tgt not in dst_off:
                            continue
                        base = dst_off[tgt]
                        sign = (-1) ** (i1 + j1)
                        m2 = _CURVE_DIMS[(i2 + 1, j2)]
                        for (rr, cc), v in w.entries.items():
                            for s in range(n1):
                                ent[(base + s * m2 + rr, off + s * n2 + cc)] = sign * v
                if ent:
                    action[(a, I, J)] = SparseRat((dst_dim, src_dim), ent)

    datum = HodgeDatum(
        d,
        q,
        dims,
        action,
        metadata={
            "model": "product of two genus-3 curves (plane quartics)",
            "W": "spanned by w_t = (t-th form, first factor) + (t-th form, second factor)",
            "degeneracy_locus_Z1": "empty",
            "degeneracy_locus_Z2": "16 points",
            "sections_of_first_homology_sheaf": "C^48 = 16 stalks x C^3 "
            "(declared, not recomputed here)",
        },
    )
    viol = datum.check_anticommutation()
    if viol is not None:
        raise RuntimeError(f"sign convention bug: anticommutation fails at {viol}")
    w_cols = [[Fraction(int(a == t or a == t + 3)) for a in range(6)] for t in range(3)]
    return datum, SubspaceW(w_cols)


def random_subspace(q: int, k: int, rng: random.Random) -> SubspaceW:
    """Random rational W of rank k (integer-leaning coordinates)."""
    while True:
        cols = [
            [
                Fraction(rng.randint(-9, 9), rng.choice((1, 1, 1, 2, 3)))
                for _ in range(q)
            ]
            for _ in range(k)
        ]
        try:
            return SubspaceW(cols)
        except ValueError:
            continue


@dataclass(frozen=True)
class BatteryReport:
    """Outcome of one exactness battery over the abelian models."""

    q_values: tuple[int, ...]
    n_w: int
    seed: int
    checked: int
    trivial: int
    full_space_checked: int
    failures: tuple
    elapsed: float

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "q_values": list(self.q_values),
            "n_w": self.n_w,
            "seed": self.seed,
            "checked": self.checked,
            "trivial": self.trivial,
            "full_space_checked": self.full_space_checked,
            "failures": [dict(f) for f in self.failures],
            "passed": self.passed,
        }


def theorem_battery(
    q_values: Sequence[int] = (2, 3, 4, 5, 6),
    n_w: int = 20,
    seed: int = 20260819,
    include_full_space: bool = True,
) -> BatteryReport:
    """Exactness-prefix sweep over abelian models.

    For every q in q_values (d = q), every k <= q, r <= q, j <= q and
    n_w random W, asserts

        exactness_prefix >= min(expected_exactness(q, k, j), r),

    the min because a complex with min(r, d) differentials cannot
    exhibit more than r leading steps.  Configurations whose bound is 0
    are counted as trivial and skipped.  With include_full_space, W = V
    at j = 0 must additionally be exact at every interior step.
    """
    rng = random.Random(seed)
    failures = []
    checked = trivial = full_checked = 0
    t0 = time.perf_counter()
    for q in q_values:
        datum = abelian_model(q)
        for k in range(1, q + 1):
            for j in range(q + 1):
                for r in range(1, q + 1):
                    target = min(expected_exactness(q, k, j), r)
                    if target == 0:
                        trivial += 1
                        continue
                    for _ in range(n_w):
                        W = random_subspace(q, k, rng)
                        c = build_complex(datum, W, r, j)
                        got = exactness_prefix(c, stop_at=target)
                        checked += 1
                        if got < target:
                            failures.append(
                                {
                                    "q": q, "k": k, "r": r, "j": j,
                                    "target": target, "prefix": got,
                                    "W": W.to_json()["columns"],
                                }
                            )
        if include_full_space:
            V = SubspaceW.full_space(q)
            for r in range(1, q + 1):
                n = min(r, q)
                c = build_complex(datum, V, r, 0)
                got = exactness_prefix(c, stop_at=n)
                full_checked += 1
                if got < n:
                    failures.append(
                        {
                            "q": q, "k": q, "r": r, "j": 0,
                            "target": n, "prefix": got, "W": "full space",
                        }
                    )
    return BatteryReport(
        q_values=tuple(q_values),
        n_w=n_w,
        seed=seed,
        checked=checked,
        trivial=trivial,
        full_space_checked=full_checked,
        failures=tuple(failures),
        elapsed=time.perf_counter() - t0,
    )
