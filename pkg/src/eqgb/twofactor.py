"""The Gaussian two-factor model: seeds, pentad, off-diagonal minor, summaries.

Symmetric-matrix variables ``y[i,j]`` (``i >= j``) under the two-factor lex
order, acted on by Inc(N). The ideal of 3x3 minors of the symmetric matrix
intersected with the off-diagonal variables is the ideal of the model; the
map ``y[i,j] -> s_i s_j + t_i t_j`` gives an independent vanishing check.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field
from itertools import permutations
from typing import Sequence

from .field import Field
from .monoid import interval_unions
from .poly import DIAG, MASK, SHIFT, Family, Polynomial, TermOrder, Variable

TF = TermOrder.TWO_FACTOR
QQ = Field()
GF2 = Field(2)


def _sign(perm) -> int:
    s = 1
    p = list(perm)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            s = -s
    return s


def determinant(rows, cols, field: Field = GF2, order: TermOrder = TF) -> Polynomial:
    """Leibniz expansion of ``det y[rows, cols]`` in the variables of ``order``."""
    n = len(rows)
    if len(cols) != n:
        raise ValueError("minor must be square")
    fam = order.family
    d: dict = {}
    for perm in permutations(range(n)):
        m = order.monomial([Variable(fam, (rows[i], cols[perm[i]])) for i in range(n)])
        d[m] = d.get(m, 0) + _sign(perm)
    return Polynomial.from_dict(order, field, {m: field.convert(c) for m, c in d.items() if c})


def _normal(f: Polynomial) -> Polynomial:
    return f.monic()


def seed_minors(field: Field = GF2) -> list[Polynomial]:
    """One 3x3 minor per Inc(N)-orbit: ``R | C = {1..k}``, deduplicated up to sign."""
    seen: dict = {}
    for r, c in interval_unions(3, 3):
        f = determinant(r, c, field)
        if f:
            seen.setdefault(_normal(f), (r, c))
    return list(seen)


def seed_minor_index_sets(field: Field = GF2) -> list[tuple]:
    """``(R, C)`` of each polynomial returned by :func:`seed_minors`."""
    seen: dict = {}
    for r, c in interval_unions(3, 3):
        f = determinant(r, c, field)
        if f:
            seen.setdefault(_normal(f), (r, c))
    return list(seen.values())


def all_minors(n: int, field: Field = GF2) -> list[Polynomial]:
    """All distinct (up to sign) 3x3 minors of the symmetric ``n x n`` matrix."""
    from itertools import combinations

    seen: dict = {}
    subsets = list(combinations(range(1, n + 1), 3))
    for r in subsets:
        for c in subsets:
            f = determinant(r, c, field)
            if f:
                seen.setdefault(_normal(f), None)
    return list(seen)


def pentad(field: Field = GF2) -> Polynomial:
    """``(1/10) sum_{pi in Sym(5)} sgn(pi) y[p1,p2] y[p2,p3] y[p3,p4] y[p4,p5] y[p5,p1]``."""
    d: dict = {}
    for perm in permutations(range(5)):
        p = [x + 1 for x in perm]
        m = TF.monomial([Variable(Family.SYM, (p[i], p[(i + 1) % 5])) for i in range(5)])
        d[m] = d.get(m, 0) + _sign(perm)
    terms = {}
    for m, c in d.items():
        if c:
            if c % 10:
                raise AssertionError("pentad coefficient not divisible by 10")
            terms[m] = field.convert(c // 10)
    return Polynomial.from_dict(TF, field, terms)


def off_diagonal_minor(field: Field = GF2) -> Polynomial:
    """``det y[{4,5,6}, {1,2,3}]``."""
    return determinant((4, 5, 6), (1, 2, 3), field)


def generic_minor(k: int = 1, field: Field = QQ) -> Polynomial:
    """Determinant of the generic ``(k+1) x (k+1)`` matrix ``(y[i,j])``."""
    idx = tuple(range(1, k + 2))
    return determinant(idx, idx, field, TermOrder.GEN_MATRIX)


def is_off_diagonal(f: Polynomial) -> bool:
    """No variable ``y[i,i]`` in any term (matrix families only)."""
    if f.order is TermOrder.GEN_MATRIX:
        return not any(c >> SHIFT == c & MASK for m, _ in f.terms for c in m)
    if f.order is TermOrder.SINGLE_INDEX:
        return False
    return not any(c & DIAG for m, _ in f.terms for c in m)


def off_diagonal_intersection(basis: Sequence[Polynomial]) -> list[Polynomial]:
    """Elements free of diagonal variables.

    Every diagonal variable exceeds every off-diagonal one in the lex order, so
    this is an elimination and the sub-list is a basis of the intersection.
    """
    return [f for f in basis if is_off_diagonal(f)]


# --- summaries ------------------------------------------------------------------------


@dataclass
class SummaryRow:
    largest_index: int
    count: int
    degrees: dict
    off_diagonal_count: int
    off_diagonal_degrees: dict


@dataclass
class BasisSummary:
    rows: list = dc_field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(r.count for r in self.rows)

    @property
    def off_diagonal_total(self) -> int:
        return sum(r.off_diagonal_count for r in self.rows)

    def as_dict(self) -> dict:
        return {
            "total": self.total,
            "off_diagonal_total": self.off_diagonal_total,
            "rows": [
                {
                    "largest_index": r.largest_index,
                    "count": r.count,
                    "degrees": {str(k): v for k, v in sorted(r.degrees.items())},
                    "off_diagonal_count": r.off_diagonal_count,
                    "off_diagonal_degrees": {str(k): v for k, v in sorted(r.off_diagonal_degrees.items())},
                }
                for r in self.rows
            ],
        }

    def key(self) -> tuple:
        """Comparable form: per row ``(li, count, degrees, off count, off degrees)``."""
        return tuple(
            (
                r.largest_index,
                r.count,
                tuple(sorted(r.degrees.items())),
                r.off_diagonal_count,
                tuple(sorted(r.off_diagonal_degrees.items())),
            )
            for r in self.rows
        )

    def table(self) -> str:
        def degs(d):
            return " ".join(f"{k}^{v}" for k, v in sorted(d.items())) or "-"

        cols = [str(r.largest_index) for r in self.rows]
        lines = [
            ("largest index", cols),
            ("# in basis", [str(r.count) for r in self.rows]),
            ("degrees", [degs(r.degrees) for r in self.rows]),
            ("# off-diagonal", [str(r.off_diagonal_count) for r in self.rows]),
            ("degrees", [degs(r.off_diagonal_degrees) for r in self.rows]),
        ]
        width = max([len(c) for _, cs in lines for c in cs], default=1)
        head = max(len(h) for h, _ in lines)
        return "\n".join(f"{h:<{head}} | " + " ".join(f"{c:>{width}}" for c in cs) for h, cs in lines)


def summarize(basis: Sequence[Polynomial]) -> BasisSummary:
    groups: dict = {}
    for f in basis:
        groups.setdefault(f.largest_index(), []).append(f)
    rows = []
    for li in sorted(groups):
        fs = groups[li]
        off = [f for f in fs if is_off_diagonal(f)]
        rows.append(
            SummaryRow(
                li,
                len(fs),
                dict(Counter(f.degree() for f in fs)),
                len(off),
                dict(Counter(f.degree() for f in off)),
            )
        )
    return BasisSummary(rows)


def _summary_from_table(table) -> BasisSummary:
    return BasisSummary(
        [SummaryRow(li, n, dict(d), m, dict(od)) for li, n, d, m, od in table]
    )


# Degrees of the 42-element Inc(N)-Groebner basis grouped by largest index.
KNOWN_SUMMARY = _summary_from_table(
    [
        (3, 1, {3: 1}, 0, {}),
        (4, 6, {3: 6}, 0, {}),
        (5, 11, {3: 10, 5: 1}, 1, {5: 1}),
        (6, 10, {3: 5, 5: 5}, 5, {3: 5}),
        (7, 8, {5: 8}, 8, {5: 8}),
        (8, 5, {5: 5}, 5, {5: 5}),
        (9, 1, {5: 1}, 1, {5: 1}),
    ]
)


# --- parameterization -------------------------------------------------------------------

PARAM = TermOrder.SINGLE_INDEX


def _param_image(c: int, cache: dict) -> Polynomial:
    if c in cache:
        return cache[c]
    v = TF.variable(c)
    i, j = v.indices
    s = lambda k: PARAM.code(Variable(Family.SINGLE, (k,), "s"))  # noqa: E731
    t = lambda k: PARAM.code(Variable(Family.SINGLE, (k,), "t"))  # noqa: E731
    one = QQ.one
    terms = {tuple(sorted((s(i), s(j)), reverse=True)): one}
    tt = tuple(sorted((t(i), t(j)), reverse=True))
    terms[tt] = terms.get(tt, QQ.zero) + one
    cache[c] = Polynomial.from_dict(PARAM, QQ, terms)
    return cache[c]


def substitute_parameterization(f: Polynomial) -> Polynomial:
    """Image of ``f`` under ``y[i,j] -> s_i s_j + t_i t_j``, over Q.

    Coefficients are lifted through their integer representatives, residues
    mod ``p`` taken in the symmetric range.
    """
    cache: dict = {}
    total: dict = {}
    for m, c in f.terms:
        n, d = f.field.to_fraction(c)
        if f.field.p and n > f.field.p // 2:
            n -= f.field.p
        prod = Polynomial.constant(PARAM, QQ, QQ.convert(n, d))
        for code in m:
            prod = prod * _param_image(code, cache)
        for mm, cc in prod.terms:
            total[mm] = total.get(mm, 0) + cc
    return Polynomial.from_dict(PARAM, QQ, total)
