"""Ordinary and equivariant reduction, S-polynomials and Buchberger's algorithm.

Every basis element is kept monic. In equivariant mode a basis element ``b``
reduces a monomial ``m`` whenever some monoid element ``g`` has
``g * lm(b) | m``; in ordinary mode only the identity is used.

Pairs of basis elements are expanded into concrete shifted pairs
``(g0 * b0, g1 * b1)``, one per orbit representative with images forming an
interval ``{1..k}``. Shifted pairs whose leading monomials are coprime are
skipped (their S-polynomial reduces to zero by the product criterion).
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .field import Field
from .monoid import (
    Matcher,
    MonoidElement,
    MonoidKind,
    _row_col_extent,
    count_interval_unions,
    matchings,
    realizations,
    map_monomial,
    map_terms,
    target_info,
)
from .poly import (
    DIAG,
    MASK,
    SHIFT,
    Monomial,
    Polynomial,
    TermOrder,
    mono_div,
    mono_lcm,
    mono_mul,
    monomial_largest_index,
)

log = logging.getLogger(__name__)

ORDINARY = "ordinary"
EQUIVARIANT = "equivariant"

# product-monoid masks pack the column mask above this bit
_COL_SHIFT = 64


class Element:
    """A monic basis polynomial with its compiled divisor matcher."""

    __slots__ = ("id", "poly", "terms", "lm", "li", "extent", "matcher", "alive")

    def __init__(self, id: int, poly: Polynomial, kind: MonoidKind | None):
        self.id = id
        self.poly = poly
        self.terms = poly.terms
        self.lm = poly.lm
        self.li = poly.largest_index()
        r, c = _row_col_extent(poly.order, poly.codes())
        if kind is MonoidKind.PRODUCT:
            self.extent = (r, c)
        else:
            self.extent = (max(r, c),)
        self.matcher = Matcher(poly.order, kind, self.lm, self.extent) if kind else None
        self.alive = True

    def shifted(self, rows, cols):
        if rows is None:
            return self.terms
        return map_terms(self.poly.order, rows, cols, self.terms)


def _mask_to_images(mask: int) -> tuple:
    out = [0]
    i = 1
    while mask >> i:
        if mask >> i & 1:
            out.append(i)
        i += 1
    return tuple(out)


def _images_to_mask(images: Iterable[int]) -> int:
    mask = 0
    for i in images:
        mask |= 1 << i
    return mask


def _decode(kind, mask):
    """Padded ``(rows, cols)`` from a stored map mask (None for the identity)."""
    if kind is None:
        return None, None
    if kind is MonoidKind.PRODUCT:
        return (
            _mask_to_images(mask & ((1 << _COL_SHIFT) - 1)),
            _mask_to_images(mask >> _COL_SHIFT),
        )
    r = _mask_to_images(mask)
    return r, r


class Reducer:
    """A growing list of basis elements together with the reduction routines."""

    # bound on memoised divisor lookups before the table is dropped
    MEMO_LIMIT = 2_000_000

    def __init__(self, order: TermOrder, field: Field, kind: MonoidKind | None):
        self.order = TermOrder(order)
        self.field = field
        self.kind = MonoidKind(kind) if kind else None
        self.elements: list[Element] = []
        # monomial -> find() result; S-pair reductions revisit the same monomials a lot
        self._memo: dict = {}
        # (element id, rows) -> shifted term list
        self._shifted: dict = {}

    @property
    def alive(self) -> list[Element]:
        return [e for e in self.elements if e.alive]

    def add(self, poly: Polynomial) -> Element:
        e = Element(len(self.elements), poly.monic(), self.kind)
        self.elements.append(e)
        self._memo.clear()
        return e

    def retire(self, e: Element):
        e.alive = False
        self._memo.clear()
        self._shifted.clear()

    def shifted_terms(self, e: Element, rows, cols):
        if rows is None:
            return e.terms
        key = (e.id, rows, cols)
        cache = self._shifted
        try:
            return cache[key]
        except KeyError:
            pass
        if len(cache) >= self.MEMO_LIMIT // 4:
            cache.clear()
        terms = cache[key] = e.shifted(rows, cols)
        return terms

    def find(self, m: Monomial, exclude: Element | None = None):
        """First live element (with a divisor map) whose shifted lm divides ``m``."""
        if exclude is not None:
            return self._search(m, exclude)
        memo = self._memo
        try:
            return memo[m]
        except KeyError:
            pass
        if len(memo) >= self.MEMO_LIMIT:
            memo.clear()
        hit = memo[m] = self._search(m, None)
        return hit

    def _search(self, m: Monomial, exclude: Element | None):
        if self.kind is None:
            n = len(m)
            for e in self.elements:
                if e.alive and e is not exclude and len(e.lm) <= n and _divides(e.lm, m):
                    return e, None, None
            return None
        info = None
        n = len(m)
        for e in self.elements:
            if not e.alive or e is exclude or e.matcher.degree > n:
                continue
            if info is None:
                info = target_info(self.order, self.kind, m)
            hit = e.matcher.match(m, info)
            if hit is not None:
                return e, hit[0], hit[1]
        return None

    def reduce_dict(self, d: dict, full: bool = False, trace: list | None = None, exclude=None) -> dict:
        """Reduce ``{monomial: payload}`` in place; returns the remainder.

        Top reduction stops at the first irreducible leading monomial; full
        reduction moves irreducible terms aside and keeps going. ``trace``
        collects ``(element id, rows, cols, cofactor monomial, coefficient)``.
        """
        p = self.field.p
        find = self.find
        rem = {}
        while d:
            lm = max(d)
            hit = find(lm, exclude)
            if hit is None:
                if not full:
                    break
                rem[lm] = d.pop(lm)
                continue
            e, rows, cols = hit
            c = d[lm]
            terms = self.shifted_terms(e, rows, cols)
            t = mono_div(lm, terms[0][0])
            if trace is not None:
                trace.append((e.id, rows, cols, t, c))
            if p == 2:
                for m, _ in terms:
                    mm = tuple(sorted(t + m, reverse=True)) if t else m
                    if mm in d:
                        del d[mm]
                    else:
                        d[mm] = 1
            elif p:
                for m, a in terms:
                    mm = tuple(sorted(t + m, reverse=True)) if t else m
                    v = (d.get(mm, 0) - c * a) % p
                    if v:
                        d[mm] = v
                    else:
                        d.pop(mm, None)
            else:
                for m, a in terms:
                    mm = tuple(sorted(t + m, reverse=True)) if t else m
                    v = d.get(mm, 0) - c * a
                    if v:
                        d[mm] = v
                    else:
                        d.pop(mm, None)
        if rem:
            rem.update(d)
            return rem
        return d

    def reduce(self, f: Polynomial, full: bool = False, trace=None, exclude=None) -> Polynomial:
        d = self.reduce_dict(dict(f.terms), full, trace, exclude)
        return Polynomial.from_dict(self.order, self.field, d)

    # --- shifted pairs ------------------------------------------------------

    def shifted_pairs(self, a: Element, b: Element):
        """Non-coprime orbit-representative pairs of ``a`` and ``b``.

        Returns ``(pairs, total)``: ``pairs`` holds ``(mask0, mask1, span,
        shifted lm0, shifted lm1)`` ordered by span, then image sets; ``total``
        counts all representatives considered, coprime ones included. Whether
        two shifted leading monomials share a variable depends only on which
        positions the two image sets share, so coprime matchings are discarded
        before their interleavings are expanded.
        """
        if self.kind is None:
            if a is b or not set(a.lm).intersection(b.lm):
                return [], int(a is not b)
            return [(0, 0, 0, a.lm, b.lm)], 1
        same = a is b
        order = self.order
        out = []
        if self.kind is MonoidKind.DIAGONAL:
            m0, m1 = a.extent[0], b.extent[0]
            total = count_interval_unions(m0, m1)
            v0 = _index_vars(order, a.lm)
            v1 = set(_index_vars(order, b.lm))
            for M in matchings(m0, m1):
                if not M:
                    continue
                f = dict(M)
                if not any((k, f[i], f[j]) in v1 for k, i, j in v0 if i in f and j in f):
                    continue
                for s0, s1 in realizations(m0, m1, M):
                    if same and s0 >= s1:
                        continue
                    r0, r1 = (0,) + s0, (0,) + s1
                    out.append((
                        _images_to_mask(s0), _images_to_mask(s1), max(s0[-1], s1[-1]),
                        map_monomial(order, r0, r0, a.lm), map_monomial(order, r1, r1, b.lm),
                    ))
        else:
            (r0, c0), (r1, c1) = a.extent, b.extent
            total = count_interval_unions(r0, r1) * count_interval_unions(c0, c1)
            v0 = _index_vars(order, a.lm)
            v1 = set(_index_vars(order, b.lm))
            col_ms = [(dict(M), M) for M in matchings(c0, c1) if M]
            for MR in matchings(r0, r1):
                if not MR:
                    continue
                fr = dict(MR)
                rows = None
                for fc, MC in col_ms:
                    if not any((k, fr[i], fc[j]) in v1 for k, i, j in v0 if i in fr and j in fc):
                        continue
                    if rows is None:
                        rows = realizations(r0, r1, MR)
                    cols = realizations(c0, c1, MC)
                    for sr0, sr1 in rows:
                        for sc0, sc1 in cols:
                            if same and (sr0, sc0) >= (sr1, sc1):
                                continue
                            R0, R1, C0, C1 = (0,) + sr0, (0,) + sr1, (0,) + sc0, (0,) + sc1
                            out.append((
                                _images_to_mask(sr0) | _images_to_mask(sc0) << _COL_SHIFT,
                                _images_to_mask(sr1) | _images_to_mask(sc1) << _COL_SHIFT,
                                max(sr0[-1], sr1[-1], sc0[-1], sc1[-1]),
                                map_monomial(order, R0, C0, a.lm), map_monomial(order, R1, C1, b.lm),
                            ))
        if same:
            total = (total - 1) // 2
        out.sort(key=_pair_order)
        return out, total

    def chain_witness(self, a: Element, m0: int, b: Element, m1: int, max_li: int | None = None):
        """A live element with a shift ``k`` such that ``lm k`` divides the
        pair's lcm ``L`` while ``lcm(lm a', lm k)`` and ``lcm(lm b', lm k)`` are
        both proper divisors of ``L`` (Buchberger's chain criterion).

        The S-polynomial is then a combination of the S-polynomials of
        ``(a', k)`` and ``(b', k)``, whose lcms are strictly smaller; those
        pairs are shifts of queued (or coprime) pairs, so skipping is safe as
        long as the witness stays in the basis. ``max_li`` limits witnesses
        to elements of at most that largest index.
        """
        order = self.order
        l0 = a.lm if self.kind is None else map_monomial(order, *_decode(self.kind, m0), a.lm)
        l1 = b.lm if self.kind is None else map_monomial(order, *_decode(self.kind, m1), b.lm)
        L = mono_lcm(l0, l1)
        n = len(L)
        if self.kind is None:
            for e in self.elements:
                if max_li is not None and e.li > max_li:
                    continue
                if (e.alive and len(e.lm) <= n and _divides(e.lm, L)
                        and mono_lcm(l0, e.lm) != L and mono_lcm(l1, e.lm) != L):
                    return e
            return None
        info = None
        for e in self.elements:
            if not e.alive or e.matcher.degree > n or (max_li is not None and e.li > max_li):
                continue
            if info is None:
                info = target_info(order, self.kind, L)
            lm = e.lm

            def proper(rows, cols):
                k = map_monomial(order, rows, cols, lm)
                return mono_lcm(l0, k) != L and mono_lcm(l1, k) != L

            if e.matcher.match(L, info, proper) is not None:
                return e
        return None

    def spoly_dict(self, a: Element, ma: int, b: Element, mb: int) -> dict:
        """S-polynomial of the shifted monic pair as a payload dict."""
        ta = a.shifted(*_decode(self.kind, ma))
        tb = b.shifted(*_decode(self.kind, mb))
        return spoly_terms(self.field, ta, tb)


def _index_vars(order: TermOrder, m: Monomial) -> list:
    """Distinct variables of ``m`` as ``(tag, i, j)`` index triples."""
    out = []
    for c in dict.fromkeys(m):
        if order is TermOrder.SINGLE_INDEX:
            out.append((c & 3, c >> 2, c >> 2))
        elif c & DIAG:
            out.append((-1, c & MASK, c & MASK))
        else:
            out.append((-2, c >> SHIFT, c & MASK))
    return out


def _pair_order(p):
    return (p[2], _mask_bits(p[0]), _mask_bits(p[1]))


def _mask_bits(mask):
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def _divides(a, b):
    nb = len(b)
    j = 0
    for x in a:
        while j < nb and b[j] > x:
            j += 1
        if j == nb or b[j] != x:
            return False
        j += 1
    return True


def spoly_terms(field: Field, ta, tb) -> dict:
    """``(L/lm a) a - (L/lm b) b`` for monic term lists (leading terms cancel)."""
    ma, mb = ta[0][0], tb[0][0]
    L = mono_lcm(ma, mb)
    ua, ub = mono_div(L, ma), mono_div(L, mb)
    d = {}
    for m, c in ta[1:]:
        d[mono_mul(ua, m)] = c
    p = field.p
    for m, c in tb[1:]:
        mm = mono_mul(ub, m)
        if mm in d:
            v = d[mm] - c
            if p:
                v %= p
            if v:
                d[mm] = v
            else:
                del d[mm]
        else:
            d[mm] = (-c) % p if p else -c
    return d


# --- public operations ---------------------------------------------------------


def _kind_for(mode: str, kind) -> MonoidKind | None:
    if mode == ORDINARY:
        return None
    if mode != EQUIVARIANT:
        raise ValueError(f"unknown mode {mode!r}")
    return MonoidKind(kind or MonoidKind.DIAGONAL)


def _ring_of(polys: Sequence[Polynomial], order=None, field=None):
    for f in polys:
        return f.order, f.field
    if order is None or field is None:
        raise ValueError("cannot infer the ring of an empty list")
    return order, field


def reduce(
    f: Polynomial,
    basis: Sequence[Polynomial],
    mode: str = EQUIVARIANT,
    kind=MonoidKind.DIAGONAL,
    full: bool = False,
    trace: list | None = None,
) -> Polynomial:
    """A (G-)remainder of ``f`` modulo ``basis``.

    With ``full=False`` only leading terms are reduced; otherwise every term is.
    ``trace`` receives one ``(basis index, rows, cols, cofactor, coefficient)``
    record per reduction step, with ``rows``/``cols`` the padded image tuples.
    """
    r = Reducer(f.order, f.field, _kind_for(mode, kind))
    for b in basis:
        if b:
            r.add(b)
    if trace is not None:
        ids = [i for i, b in enumerate(basis) if b]
        raw: list = []
        out = r.reduce(f, full, raw)
        trace.extend((ids[eid], rows, cols, t, c) for eid, rows, cols, t, c in raw)
        return out
    return r.reduce(f, full)


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    """``lc(g) (L/lm f) f - lc(f) (L/lm g) g`` with ``L = lcm(lm f, lm g)``."""
    if not f or not g:
        raise ValueError("S-polynomial of the zero polynomial")
    L = mono_lcm(f.lm, g.lm)
    return f.mul_term(mono_div(L, f.lm), g.lc) - g.mul_term(mono_div(L, g.lm), f.lc)


def equivariant_s_pairs(
    b0: Polynomial, b1: Polynomial, kind=MonoidKind.DIAGONAL, stats: dict | None = None
) -> list[Polynomial]:
    """A complete set of equivariant S-polynomials, coprime shifted pairs omitted.

    ``stats["coprime_skips"]`` is incremented per omitted pair.
    """
    kind = MonoidKind(kind)
    r = Reducer(b0.order, b0.field, kind)
    e0 = r.add(b0)
    e1 = r.add(b1) if b1 != b0 else e0
    out = []
    if not b0.lm or not b1.lm:
        return out
    pairs, total = r.shifted_pairs(e0, e1)
    if stats is not None:
        stats["coprime_skips"] = stats.get("coprime_skips", 0) + total - len(pairs)
    for m0, m1, _, _, _ in pairs:
        out.append(Polynomial.from_dict(b0.order, b0.field, r.spoly_dict(e0, m0, e1, m1)))
    return out


# --- Buchberger ----------------------------------------------------------------------


@dataclass
class Limits:
    max_pairs: int | None = None
    max_degree: int | None = None
    # caps the span k of a shifted pair (images inside {1..k})
    max_largest_index: int | None = None
    checkpoint_every: int = 10_000
    log_every: int = 1000


@dataclass
class BasisState:
    """Basis plus pending shifted pairs; everything needed to resume a run.

    Queue entries are ``(lcm degree, lcm largest index, seq, span, id0, id1,
    mask0, mask1)`` where the masks encode the image sets of the two maps.
    ``witnesses`` holds ids of elements that justified a chain-criterion skip;
    those are never retired.
    """

    order: TermOrder
    field: Field
    mode: str
    kind: MonoidKind | None
    polys: list = dc_field(default_factory=list)
    alive: list = dc_field(default_factory=list)
    queue: list = dc_field(default_factory=list)
    deferred: list = dc_field(default_factory=list)
    witnesses: set = dc_field(default_factory=set)
    seq: int = 0
    stats: dict = dc_field(
        default_factory=lambda: {
            "pairs_processed": 0,
            "zero_reductions": 0,
            "new_elements": 0,
            "coprime_skips": 0,
            "chain_skips": 0,
            "removed": 0,
            "deferred": 0,
        }
    )
    complete: bool = False

    @property
    def elements(self) -> list[Polynomial]:
        return [p for p, a in zip(self.polys, self.alive) if a]


class _Run:
    def __init__(self, state: BasisState, limits: Limits, chain: bool = True):
        self.state = state
        self.limits = limits
        self.chain = chain
        self.red = Reducer(state.order, state.field, state.kind)
        for p, a in zip(state.polys, state.alive):
            e = self.red.add(p)
            if not a:
                self.red.retire(e)

    def enqueue_pairs(self, new: Element):
        st = self.state
        red = self.red
        lim = self.limits
        for e in red.elements:
            if not e.alive:
                continue
            a, b = (e, new) if e.id <= new.id else (new, e)
            pairs, total = red.shifted_pairs(a, b)
            st.stats["coprime_skips"] += total - len(pairs)
            for m0, m1, span, l0, l1 in pairs:
                L = mono_lcm(l0, l1)
                task = (len(L), monomial_largest_index(st.order, L), st.seq, span, a.id, b.id, m0, m1)
                st.seq += 1
                if not self.admits(task):
                    st.deferred.append(task)
                    st.stats["deferred"] += 1
                else:
                    heapq.heappush(st.queue, task)

    def admits(self, task) -> bool:
        lim = self.limits
        if lim.max_degree is not None and task[0] > lim.max_degree:
            return False
        return lim.max_largest_index is None or task[3] <= lim.max_largest_index

    def insert(self, poly: Polynomial):
        """Append a new monic element, retire elements it makes redundant, pair it."""
        st = self.state
        work = [poly]
        while work:
            f = work.pop()
            if not f:
                continue
            e = self.red.add(f)
            st.polys.append(e.poly)
            st.alive.append(True)
            st.stats["new_elements"] += 1
            retired = []
            if e.lm:
                for old in self.red.elements:
                    if old.id in st.witnesses:
                        continue
                    if old.alive and old is not e and len(old.lm) >= len(e.lm) and self._divides(e, old.lm):
                        self.red.retire(old)
                        st.alive[old.id] = False
                        st.stats["removed"] += 1
                        retired.append(old)
            self.enqueue_pairs(e)
            for old in retired:
                r = self.red.reduce(old.poly, full=True)
                if r:
                    work.append(r.monic())

    def _divides(self, e: Element, m: Monomial) -> bool:
        if self.red.kind is None:
            return _divides(e.lm, m)
        return e.matcher.match(m) is not None

    def loop(self, on_checkpoint: Callable | None = None) -> BasisState:
        st = self.state
        lim = self.limits
        red = self.red
        els = red.elements
        while st.queue:
            if lim.max_pairs is not None and st.stats["pairs_processed"] >= lim.max_pairs:
                st.complete = False
                return st
            _, _, _, _, i0, i1, m0, m1 = heapq.heappop(st.queue)
            a, b = els[i0], els[i1]
            if not (a.alive and b.alive):
                continue
            if self.chain:
                w = red.chain_witness(a, m0, b, m1)
                if w is not None:
                    st.witnesses.add(w.id)
                    st.stats["chain_skips"] += 1
                    continue
            d = red.spoly_dict(a, m0, b, m1)
            rem = red.reduce_dict(d)
            st.stats["pairs_processed"] += 1
            if rem:
                rem = red.reduce_dict(rem, full=True)
                self.insert(Polynomial.from_dict(st.order, st.field, rem).monic())
            else:
                st.stats["zero_reductions"] += 1
            n = st.stats["pairs_processed"]
            if lim.log_every and n % lim.log_every == 0:
                log.info(
                    "pairs %d  queue %d  basis %d  new %d  coprime %d  chain %d",
                    n,
                    len(st.queue),
                    sum(st.alive),
                    st.stats["new_elements"],
                    st.stats["coprime_skips"],
                    st.stats["chain_skips"],
                )
            if on_checkpoint is not None and lim.checkpoint_every and n % lim.checkpoint_every == 0:
                on_checkpoint(st)
        st.complete = not st.deferred
        return st


def buchberger(
    seed: Sequence[Polynomial] = (),
    mode: str = EQUIVARIANT,
    kind=MonoidKind.DIAGONAL,
    limits: Limits | None = None,
    state: BasisState | None = None,
    on_checkpoint: Callable | None = None,
    order: TermOrder | None = None,
    field: Field | None = None,
    chain: bool = True,
) -> BasisState:
    """Run (or resume) the Buchberger loop.

    On natural termination the returned state has ``complete=True`` and its
    live elements satisfy the (equivariant) Buchberger criterion. Stopping on
    ``max_pairs`` or deferring pairs beyond the degree/index caps leaves
    ``complete=False``. When resuming, deferred pairs that the new limits
    admit go back into the queue. ``chain=False`` turns off the chain
    criterion so every non-coprime shifted pair is reduced.
    """
    limits = limits or Limits()
    if state is None:
        order, field = _ring_of(seed, order, field)
        state = BasisState(TermOrder(order), field, mode, _kind_for(mode, kind))
        run = _Run(state, limits, chain)
        for f in seed:
            if not f:
                continue
            f = run.red.reduce(f.monic(), full=True)
            if f:
                run.insert(f.monic())
    else:
        run = _Run(state, limits, chain)
        keep = []
        for task in state.deferred:
            if run.admits(task):
                heapq.heappush(state.queue, task)
            else:
                keep.append(task)
        state.deferred = keep
    return run.loop(on_checkpoint)


# --- criterion, interreduction, truncation --------------------------------------------


@dataclass
class CriterionReport:
    passed: bool
    base_pairs: int = 0
    spolys_checked: int = 0
    coprime_skips: int = 0
    chain_skips: int = 0
    failures: list = dc_field(default_factory=list)

    def __bool__(self):
        return self.passed


def check_criterion(
    basis: Sequence[Polynomial],
    mode: str = EQUIVARIANT,
    kind=MonoidKind.DIAGONAL,
    max_li_sum: int | None = None,
    max_failures: int = 10,
    progress: Callable | None = None,
    chain: bool = True,
) -> CriterionReport:
    """Reduce the (shifted) S-polynomials of ``basis`` and report nonzero remainders.

    ``max_li_sum`` restricts to element pairs with ``li(b0) + li(b1)`` at most
    that bound. Failures are ``(i, j, g_i, g_j, remainder)`` with monoid
    elements (or None in ordinary mode).

    With ``chain`` an S-pair that has a chain-criterion witness in ``basis``
    is counted in ``chain_skips`` instead of being reduced. This is still a
    complete check: every pair is either reduced, coprime, or a combination
    of pairs with strictly smaller lcm, all of which are examined too. Under
    ``max_li_sum`` only witnesses whose own pairs lie inside the bound are
    used. ``chain=False`` reduces every non-coprime S-polynomial.
    """
    order, field = _ring_of(basis) if basis else (None, None)
    rep = CriterionReport(passed=True)
    if not basis:
        return rep
    k = _kind_for(mode, kind)
    red = Reducer(order, field, k)
    els = [red.add(b) for b in basis]
    for i, a in enumerate(els):
        for b in els[i:]:
            if max_li_sum is not None and a.li + b.li > max_li_sum:
                continue
            rep.base_pairs += 1
            pairs, total = red.shifted_pairs(a, b)
            rep.coprime_skips += total - len(pairs)
            max_li = None if max_li_sum is None else max_li_sum - max(a.li, b.li)
            for m0, m1, _, _, _ in pairs:
                if chain and red.chain_witness(a, m0, b, m1, max_li) is not None:
                    rep.chain_skips += 1
                    continue
                rep.spolys_checked += 1
                rem = red.reduce_dict(red.spoly_dict(a, m0, b, m1))
                if rem:
                    rep.passed = False
                    if len(rep.failures) < max_failures:
                        rep.failures.append(
                            (a.id, b.id, _element(k, m0), _element(k, m1),
                             Polynomial.from_dict(order, field, rem))
                        )
            if progress is not None:
                progress(a.id, b.id, rep)
    return rep


def _element(kind, mask):
    if kind is None:
        return None
    rows, cols = _decode(kind, mask)
    if kind is MonoidKind.DIAGONAL:
        return MonoidElement.diagonal(rows[1:])
    return MonoidElement.product(rows[1:], cols[1:])


def _sort_key(f: Polynomial):
    return (f.largest_index(), f.degree(), f.lm, f.terms)


def interreduce(basis: Sequence[Polynomial], mode: str = EQUIVARIANT, kind=MonoidKind.DIAGONAL) -> list[Polynomial]:
    """Minimal, tail-reduced, monic basis, sorted by (largest index, degree, lm)."""
    polys = [b.monic() for b in basis if b]
    if not polys:
        return []
    k = _kind_for(mode, kind)
    order, field = _ring_of(polys)
    # constants generate everything
    if any(not f.lm for f in polys):
        return [Polynomial.constant(order, field, 1)]
    # tie-break: smaller largest index, smaller degree, smaller lm
    polys.sort(key=lambda f: (len(f.lm), f.lm, f.largest_index(), f.degree(), f.terms))
    keep = Reducer(order, field, k)
    for f in polys:
        if keep.find(f.lm) is None:
            keep.add(f)
    out = []
    for e in keep.elements:
        head = e.terms[0]
        tail = dict(e.terms[1:])
        rem = keep.reduce_dict(tail, full=True, exclude=e)
        rem[head[0]] = head[1]
        out.append(Polynomial.from_dict(order, field, rem).monic())
    return sorted(out, key=_sort_key)


def truncate_basis(basis: Sequence[Polynomial], n: int, kind=MonoidKind.DIAGONAL) -> list[Polynomial]:
    """All images of the basis under increasing maps into ``{1..n}``, deduplicated."""
    kind = MonoidKind(kind)
    seen = {}
    for b in basis:
        if not b:
            continue
        r, c = _row_col_extent(b.order, b.codes())
        if kind is MonoidKind.DIAGONAL:
            li = max(r, c)
            if li > n:
                continue
            maps = [((0,) + s, (0,) + s) for s in combinations(range(1, n + 1), li)]
        else:
            if r > n or c > n:
                continue
            maps = [
                ((0,) + s, (0,) + t)
                for s in combinations(range(1, n + 1), r)
                for t in combinations(range(1, n + 1), c)
            ]
        for rows, cols in maps:
            g = Polynomial(b.order, b.field, map_terms(b.order, rows, cols, b.terms))
            seen.setdefault(g, None)
    return sorted(seen, key=_sort_key)


def minimal_monomials(monos: Iterable[Monomial]) -> list[Monomial]:
    """Minimal generators of the monomial ideal spanned by ``monos``, ascending."""
    out: list[Monomial] = []
    for m in sorted(set(monos), key=lambda m: (len(m), m)):
        if not any(_divides(g, m) for g in out):
            out.append(m)
    return sorted(out)


def leading_ideal(basis: Sequence[Polynomial]) -> list[Monomial]:
    """Minimal generators of the ordinary ideal of leading monomials of ``basis``."""
    return minimal_monomials(f.lm for f in basis if f)
