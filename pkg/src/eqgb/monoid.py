"""The monoid Inc(N) of strictly increasing maps and its product Inc(N) x Inc(N).

Only finitely many indices ever matter, so an increasing map is stored as the
tuple of images of ``1..m``. The diagonal action applies one map to every index
of a variable; the product action (generic matrices only) applies the row map
to the first index and the column map to the second.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from itertools import combinations

from .poly import DIAG, MASK, SHIFT, Monomial, Polynomial, TermOrder, Variable


class MonoidKind(str, enum.Enum):
    DIAGONAL = "diagonal"
    PRODUCT = "product"


@dataclass(frozen=True)
class IncMap:
    images: tuple

    def __post_init__(self):
        imgs = tuple(int(x) for x in self.images)
        if imgs and imgs[0] < 1:
            raise ValueError("images must be positive")
        if any(a >= b for a, b in zip(imgs, imgs[1:])):
            raise ValueError(f"{imgs} is not strictly increasing")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, m: int) -> "IncMap":
        return cls(tuple(range(1, m + 1)))

    @classmethod
    def onto(cls, image_set) -> "IncMap":
        """The unique increasing bijection from ``1..len(image_set)`` onto it."""
        return cls(tuple(sorted(image_set)))

    @property
    def domain(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        if not 1 <= i <= len(self.images):
            raise ValueError(f"index {i} outside the domain 1..{len(self.images)}")
        return self.images[i - 1]

    def compose(self, other: "IncMap") -> "IncMap":
        """``self o other`` (apply ``other`` first)."""
        return IncMap(tuple(self(x) for x in other.images))

    def image_set(self) -> frozenset:
        return frozenset(self.images)


@dataclass(frozen=True)
class MonoidElement:
    kind: MonoidKind
    row: IncMap
    col: IncMap | None = None

    def __post_init__(self):
        if (self.kind is MonoidKind.PRODUCT) != (self.col is not None):
            raise ValueError("product elements carry a column map, diagonal ones do not")

    @classmethod
    def diagonal(cls, images) -> "MonoidElement":
        return cls(MonoidKind.DIAGONAL, IncMap(tuple(images)))

    @classmethod
    def product(cls, rows, cols) -> "MonoidElement":
        return cls(MonoidKind.PRODUCT, IncMap(tuple(rows)), IncMap(tuple(cols)))

    def compose(self, other: "MonoidElement") -> "MonoidElement":
        if self.kind is not other.kind:
            raise ValueError("cannot compose elements of different monoids")
        if self.kind is MonoidKind.DIAGONAL:
            return MonoidElement(self.kind, self.row.compose(other.row))
        return MonoidElement(self.kind, self.row.compose(other.row), self.col.compose(other.col))

    def raw(self) -> tuple:
        """Padded image tuples as used by the fast code paths."""
        r = (0,) + self.row.images
        return (r, r) if self.col is None else (r, (0,) + self.col.images)


# --- action --------------------------------------------------------------------


def _check_kind(order: TermOrder, kind: MonoidKind) -> None:
    if kind is MonoidKind.PRODUCT and order is not TermOrder.GEN_MATRIX:
        raise ValueError("the product monoid only acts on gen-matrix variables")


def map_code(order: TermOrder, rows: tuple, cols: tuple, c: int) -> int:
    """Image of one variable code; ``rows``/``cols`` are images padded with a leading 0."""
    if order is TermOrder.SINGLE_INDEX:
        return (rows[c >> 2] << 2) | (c & 3)
    if c & DIAG:
        return DIAG | rows[c & MASK]
    return (rows[c >> SHIFT] << SHIFT) | cols[c & MASK]


def map_monomial(order: TermOrder, rows: tuple, cols: tuple, m: Monomial) -> Monomial:
    # increasing maps preserve the variable order, so the image stays sorted
    if order is TermOrder.SINGLE_INDEX:
        return tuple([(rows[c >> 2] << 2) | (c & 3) for c in m])
    return tuple(
        [DIAG | rows[c & MASK] if c & DIAG else (rows[c >> SHIFT] << SHIFT) | cols[c & MASK] for c in m]
    )


def map_terms(order: TermOrder, rows: tuple, cols: tuple, terms) -> list:
    return [(map_monomial(order, rows, cols, m), c) for m, c in terms]


def _row_col_extent(order: TermOrder, codes) -> tuple[int, int]:
    r = c = 0
    for x in codes:
        if order is TermOrder.SINGLE_INDEX:
            r = max(r, x >> 2)
        elif x & DIAG:
            r = max(r, x & MASK)
        else:
            r = max(r, x >> SHIFT)
            c = max(c, x & MASK)
    return r, c


def apply(g: MonoidElement, target, order: TermOrder | None = None):
    """Apply ``g`` to a Variable, a monomial (needs ``order``) or a Polynomial."""
    if isinstance(target, Polynomial):
        order = target.order
        codes = target.codes()
    elif isinstance(target, Variable):
        from .poly import _ORDER_FAMILY

        order = next(o for o, f in _ORDER_FAMILY.items() if f is target.family)
        codes = {order.code(target)}
    else:
        if order is None:
            raise ValueError("applying to a bare monomial requires the term order")
        codes = set(target)
    order = TermOrder(order)
    _check_kind(order, g.kind)
    r, c = _row_col_extent(order, codes)
    if g.kind is MonoidKind.DIAGONAL:
        need = max(r, c)
        if need > g.row.domain:
            raise ValueError(f"index {need} outside the map's domain 1..{g.row.domain}")
    elif r > g.row.domain or c > g.col.domain:
        raise ValueError("index outside the map's domain")
    rows, cols = g.raw()
    if isinstance(target, Polynomial):
        return Polynomial(order, target.field, map_terms(order, rows, cols, target.terms))
    if isinstance(target, Variable):
        return order.variable(map_code(order, rows, cols, order.code(target)))
    return map_monomial(order, rows, cols, target)


# --- orbit pairs -----------------------------------------------------------------


def interval_unions(m0: int, m1: int):
    """Yield ``(S0, S1)`` with ``|Si| = mi`` and ``S0 | S1 = {1..k}``.

    Ordered by ``k`` ascending, then lexicographically on ``(S0, S1)``.
    """
    lo = max(m0, m1)
    if lo == 0:
        yield (), ()
        return
    for k in range(lo, m0 + m1 + 1):
        full = range(1, k + 1)
        overlap = m0 + m1 - k
        for s0 in combinations(full, m0):
            s0set = set(s0)
            rest = [x for x in full if x not in s0set]
            if len(rest) > m1:
                continue
            pairs = []
            for shared in combinations(s0, overlap):
                pairs.append(tuple(sorted(rest + list(shared))))
            pairs.sort()
            for s1 in pairs:
                yield s0, s1


def matchings(m0: int, m1: int):
    """Yield strictly increasing partial matchings between ``1..m0`` and ``1..m1``.

    A pair ``(S0, S1)`` from :func:`interval_unions` identifies the ``a``-th
    element of ``S0`` with the ``b``-th element of ``S1`` exactly when both are
    the same position; these identifications form such a matching.
    """
    acc: list = []

    def rec(a0, b0):
        yield tuple(acc)
        for a in range(a0 + 1, m0 + 1):
            for b in range(b0 + 1, m1 + 1):
                acc.append((a, b))
                yield from rec(a, b)
                acc.pop()

    yield from rec(0, 0)


def realizations(m0: int, m1: int, matching) -> list:
    """All ``(S0, S1)`` with ``S0 | S1 = {1..k}`` whose shared positions are ``matching``.

    Between consecutive matched positions the unmatched elements of the two
    sides interleave freely.
    """
    bounds = [(0, 0), *matching, (m0 + 1, m1 + 1)]
    gaps = []
    for (a, b), (a2, b2) in zip(bounds, bounds[1:]):
        x, y = a2 - a - 1, b2 - b - 1
        gaps.append((x, y, [set(c) for c in combinations(range(x + y), x)] if x and y else [None]))
    out = []
    s0: list = []
    s1: list = []

    def rec(g, pos):
        x, y, choices = gaps[g]
        for choice in choices:
            n0, n1 = len(s0), len(s1)
            p = pos
            for t in range(x + y):
                p += 1
                if choice is None:
                    (s0 if x else s1).append(p)
                elif t in choice:
                    s0.append(p)
                else:
                    s1.append(p)
            if g + 1 < len(gaps):
                p += 1
                s0.append(p)
                s1.append(p)
                rec(g + 1, p)
            else:
                out.append((tuple(s0), tuple(s1)))
            del s0[n0:]
            del s1[n1:]

    rec(0, 0)
    return out


def count_interval_unions(m0: int, m1: int) -> int:
    from math import comb

    if max(m0, m1) == 0:
        return 1
    return sum(comb(k, m0) * comb(m0, m0 + m1 - k) for k in range(max(m0, m1), m0 + m1 + 1))


def enumerate_pair_maps(m0, m1, kind: MonoidKind = MonoidKind.DIAGONAL) -> list:
    """Orbit representatives of ``Inc b0 x Inc b1``.

    For the diagonal monoid ``m0``, ``m1`` are the largest indices. For the
    product monoid they are ``(rows, cols)`` extents and the row and column
    interval-union families are combined independently.
    """
    kind = MonoidKind(kind)
    if kind is MonoidKind.DIAGONAL:
        return [
            (MonoidElement.diagonal(s0), MonoidElement.diagonal(s1))
            for s0, s1 in interval_unions(m0, m1)
        ]
    (r0, c0), (r1, c1) = m0, m1
    rows = list(interval_unions(r0, r1))
    cols = list(interval_unions(c0, c1))
    return [
        (MonoidElement.product(a0, b0), MonoidElement.product(a1, b1))
        for a0, a1 in rows
        for b0, b1 in cols
    ]


# --- equivariant divisibility ------------------------------------------------------

_K_DIAG, _K_PAIR, _K_SINGLE = 0, 1, 2


class Matcher:
    """Compiled search for ``g`` with ``g * pattern | target``.

    The search is driven by pattern variables: each one is sent to a target
    variable of the same kind with at least its exponent, which fixes the
    images of its indices. A partial assignment is kept only while the images
    of each map stay strictly increasing with room for the pattern's gaps.
    """

    __slots__ = ("order", "kind", "pattern", "domain", "slots", "vars", "near", "low", "degree", "ndiag", "nmaps")

    def __init__(self, order: TermOrder, kind: MonoidKind, pattern: Monomial, domain=None):
        self.order = order
        self.kind = kind
        self.pattern = pattern
        self.degree = len(pattern)
        self.ndiag = sum(1 for c in pattern if c & DIAG) if order is TermOrder.TWO_FACTOR else 0
        product = kind is MonoidKind.PRODUCT
        self.nmaps = 2 if product else 1
        pvars = []
        for c, e in Counter(pattern).items():
            if order is TermOrder.SINGLE_INDEX:
                pvars.append(((_K_SINGLE, c & 3), (0, c >> 2), None, e))
            elif c & DIAG:
                pvars.append(((_K_DIAG, 0), (0, c & MASK), None, e))
            else:
                i, j = c >> SHIFT, c & MASK
                pvars.append(((_K_PAIR, 0), (0, i), (1 if product else 0, j), e))
        used = [set(), set()]
        for _, a, b, _ in pvars:
            used[a[0]].add(a[1])
            if b is not None:
                used[b[0]].add(b[1])
        self.slots = [(mid, u) for mid in range(self.nmaps) for u in sorted(used[mid])]
        pos = {s: n for n, s in enumerate(self.slots)}
        # higher exponents first: they have the fewest candidates
        pvars.sort(key=lambda v: -v[3])
        self.vars = [(key, pos[a], pos[b] if b is not None else None, e) for key, a, b, e in pvars]
        # per slot: the other slots of the same map with their pattern offsets
        self.near = [
            [(t, u2 - u) for t, (m2, u2) in enumerate(self.slots) if m2 == mid and t != s]
            for s, (mid, u) in enumerate(self.slots)
        ]
        self.low = [u for _, u in self.slots]
        if domain is None:
            r, c = _row_col_extent(order, pattern)
            domain = (r, c) if product else (max(r, c),)
        elif isinstance(domain, int):
            domain = (domain,) * self.nmaps
        self.domain = tuple(domain)

    def match(self, target: Monomial, info=None, accept=None):
        """Padded image tuples ``(rows, cols)`` of a divisor map, or None.

        ``info`` is ``target_info(...)`` of the target, precomputed when the same
        target is matched against many patterns. With ``accept``, divisor maps
        are tried in search order and the first one with ``accept(rows, cols)``
        true is returned.
        """
        if self.degree > len(target):
            return None
        if info is None:
            info = target_info(self.order, self.kind, target)
        groups, ndiag = info
        if self.ndiag > ndiag:
            return None
        pvars, near, low = self.vars, self.near, self.low
        nv = len(pvars)
        val = [0] * len(self.slots)

        def fits(s, v):
            if v < low[s]:
                return False
            for t, du in near[s]:
                w = val[t]
                if w and (w - v < du if du > 0 else v - w < -du):
                    return False
            return True

        def search(k):
            if k == nv:
                return accept is None or accept(*self._images(val))
            key, sa, sb, e = pvars[k]
            for va, vb, cnt in groups.get(key, ()):
                if cnt < e:
                    continue
                new_a = new_b = False
                if val[sa]:
                    if val[sa] != va:
                        continue
                elif fits(sa, va):
                    val[sa] = va
                    new_a = True
                else:
                    continue
                ok = True
                if sb is not None:
                    if val[sb]:
                        ok = val[sb] == vb
                    elif fits(sb, vb):
                        val[sb] = vb
                        new_b = True
                    else:
                        ok = False
                if ok and search(k + 1):
                    return True
                if new_a:
                    val[sa] = 0
                if new_b:
                    val[sb] = 0
            return False

        if not search(0):
            return None
        return self._images(val)

    def _images(self, val):
        out = []
        for mid in range(self.nmaps):
            known = {u: val[a] for a, (m, u) in enumerate(self.slots) if m == mid}
            imgs = [0]
            pu = pv = 0
            for x in range(1, self.domain[mid] + 1):
                if x in known:
                    pu, pv = x, known[x]
                    imgs.append(pv)
                else:
                    imgs.append(pv + x - pu)
            out.append(tuple(imgs))
        if self.nmaps == 1:
            return out[0], out[0]
        return out[0], out[1]


def target_info(order: TermOrder, kind: MonoidKind, target: Monomial):
    """Target variables grouped by kind as ``(i, j, exponent)``, plus the diagonal count."""
    groups: dict = {}
    ndiag = 0
    for c, e in Counter(target).items():
        if order is TermOrder.SINGLE_INDEX:
            i = c >> 2
            groups.setdefault((_K_SINGLE, c & 3), []).append((i, i, e))
        elif c & DIAG:
            i = c & MASK
            groups.setdefault((_K_DIAG, 0), []).append((i, i, e))
            ndiag += e
        else:
            groups.setdefault((_K_PAIR, 0), []).append((c >> SHIFT, c & MASK, e))
    return groups, ndiag


def find_divisor_map(pattern: Monomial, target: Monomial, kind, order: TermOrder, domain=None):
    """A monoid element ``g`` with ``g * pattern | target``, or None."""
    order, kind = TermOrder(order), MonoidKind(kind)
    _check_kind(order, kind)
    hit = Matcher(order, kind, pattern, domain).match(target)
    if hit is None:
        return None
    rows, cols = hit
    if kind is MonoidKind.DIAGONAL:
        return MonoidElement.diagonal(rows[1:])
    return MonoidElement.product(rows[1:], cols[1:])
