"""Seeded randomized property checks shared by the unit and acceptance tests.

Each ``check_*`` runs ``n`` cases from a fixed seed, raises AssertionError
with the offending case on failure and returns the number of cases run.
"""

from __future__ import annotations

import random
from itertools import combinations

from eqgb.engine import Reducer, reduce, s_polynomial
from eqgb.field import Field
from eqgb.monoid import IncMap, MonoidElement, MonoidKind, apply, enumerate_pair_maps, find_divisor_map
from eqgb.poly import (
    Family,
    Polynomial,
    TermOrder,
    Variable,
    mono_divides,
    mono_lcm,
    mono_mul,
)

SEED = 20240611
CASES = 1000

GF2 = Field(2)
GF7 = Field(7)
QQ = Field()

TF = TermOrder.TWO_FACTOR
GM = TermOrder.GEN_MATRIX
SI = TermOrder.SINGLE_INDEX
ORDERS = (TF, GM, SI)


def rand_var(rng, order, top):
    if order is SI:
        return Variable(Family.SINGLE, (rng.randint(1, top),), rng.choice("xst"))
    i, j = rng.randint(1, top), rng.randint(1, top)
    return Variable(order.family, (i, j))


def rand_mono(rng, order, top=5, deg=4):
    return order.monomial([rand_var(rng, order, top) for _ in range(rng.randint(0, deg))])


def rand_poly(rng, order, field, top=4, deg=3, terms=4):
    d = {}
    for _ in range(rng.randint(1, terms)):
        c = field.convert(rng.randint(-5, 5), rng.choice([1, 1, 2, 3]) if field.is_rational else 1)
        d[rand_mono(rng, order, top, deg)] = c
    return Polynomial.from_dict(order, field, d)


def rand_inc(rng, m, top):
    return tuple(sorted(rng.sample(range(1, top + 1), m)))


def rand_element(rng, order, kind, m, top):
    if kind is MonoidKind.PRODUCT:
        return MonoidElement.product(rand_inc(rng, m, top), rand_inc(rng, m, top))
    return MonoidElement.diagonal(rand_inc(rng, m, top))


def _kinds(order):
    return (MonoidKind.DIAGONAL, MonoidKind.PRODUCT) if order is GM else (MonoidKind.DIAGONAL,)


# --- term order axioms -----------------------------------------------------------------


def _rank(order, c):
    """Sort key of a variable straight from its indices (no code arithmetic)."""
    v = order.variable(c)
    if order is TF:
        i, j = v.indices
        return (1, i, 0) if i == j else (0, i, j)
    if order is GM:
        return v.indices
    return (v.indices[0], "xst".index(v.name))


def ref_compare(order, a, b):
    """Lex order on exponent vectors, variables ranked by :func:`_rank`."""
    ea, eb = {}, {}
    for m, e in ((a, ea), (b, eb)):
        for c in m:
            k = _rank(order, c)
            e[k] = e.get(k, 0) + 1
    for k in sorted(set(ea) | set(eb), reverse=True):
        x, y = ea.get(k, 0), eb.get(k, 0)
        if x != y:
            return 1 if x > y else -1
    return 0


def check_multiplicativity(n=CASES, seed=SEED):
    """EGB1: a < b implies a*c < b*c; 1 is smallest; the encoding agrees with lex."""
    rng = random.Random(seed)
    for _ in range(n):
        order = rng.choice(ORDERS)
        a, b, c = (rand_mono(rng, order) for _ in range(3))
        assert order.compare(a, b) == ref_compare(order, a, b), (a, b)
        assert order.compare(a, b) == order.compare(mono_mul(a, c), mono_mul(b, c)), (a, b, c)
        assert order.compare((), a) <= 0
    return n


def check_order_preservation(n=CASES, seed=SEED + 1):
    """EGB2: a < b implies g a < g b for every monoid element g."""
    rng = random.Random(seed)
    for _ in range(n):
        order = rng.choice(ORDERS)
        kind = rng.choice(_kinds(order))
        a, b = rand_mono(rng, order), rand_mono(rng, order)
        g = rand_element(rng, order, kind, 5, 9)
        ga, gb = apply(g, a, order), apply(g, b, order)
        assert order.compare(a, b) == order.compare(ga, gb), (a, b, g)
    return n


def check_lcm_equivariance(n=CASES, seed=SEED + 2):
    """EGB3: g lcm(a, b) = lcm(g a, g b)."""
    rng = random.Random(seed)
    for _ in range(n):
        order = rng.choice(ORDERS)
        kind = rng.choice(_kinds(order))
        a, b = rand_mono(rng, order), rand_mono(rng, order)
        g = rand_element(rng, order, kind, 5, 9)
        assert apply(g, mono_lcm(a, b), order) == mono_lcm(apply(g, a, order), apply(g, b, order))
    return n


def check_dilation(n=CASES, seed=SEED + 3):
    """Increasing maps never move a monomial down: g m >= m."""
    rng = random.Random(seed)
    for _ in range(n):
        order = rng.choice(ORDERS)
        kind = rng.choice(_kinds(order))
        m = rand_mono(rng, order)
        g = rand_element(rng, order, kind, 5, 9)
        assert order.compare(apply(g, m, order), m) >= 0, (m, g)
    return n


# --- divisor search ---------------------------------------------------------------------


def _extent(order, m):
    idx = [order.variable(c).indices for c in m]
    if order is GM:
        return max([i for i, _ in idx], default=0), max([j for _, j in idx], default=0)
    k = max([max(t) for t in idx], default=0)
    return k, k


def brute_divisor_maps(pattern, target, kind, order, top=6):
    """Every monoid element with images in ``1..top`` such that ``g pattern | target``."""
    r, c = _extent(order, pattern)
    if kind is MonoidKind.PRODUCT:
        cands = [MonoidElement.product(a, b) for a in combinations(range(1, top + 1), r)
                 for b in combinations(range(1, top + 1), c)]
    else:
        cands = [MonoidElement.diagonal(a) for a in combinations(range(1, top + 1), max(r, c))]
    return [g for g in cands if mono_divides(apply(g, pattern, order), target)]


def check_divisor_search(n=CASES, seed=SEED + 4, top=6):
    """find_divisor_map agrees with exhaustive search on indices up to ``top``."""
    rng = random.Random(seed)
    hits = 0
    for _ in range(n):
        order = rng.choice(ORDERS)
        kind = rng.choice(_kinds(order))
        pattern = rand_mono(rng, order, top=4, deg=3)
        if rng.random() < 0.5:
            r, c = _extent(order, pattern)
            g = rand_element(rng, order, kind, max(r, c, 1), top)
            target = mono_mul(apply(g, pattern, order), rand_mono(rng, order, top, 2))
        else:
            target = rand_mono(rng, order, top, 6)
        got = find_divisor_map(pattern, target, kind, order)
        brute = brute_divisor_maps(pattern, target, kind, order, top)
        assert (got is None) == (not brute), (pattern, target, kind, got)
        if got is not None:
            hits += 1
            assert mono_divides(apply(got, pattern, order), target), (pattern, target, got)
    assert hits > n // 4
    return n


def check_pair_completeness(n=CASES, seed=SEED + 7):
    """Every pair (g0, g1) factors as (h pi0, h pi1) with (pi0, pi1) enumerated."""
    rng = random.Random(seed)
    cache = {}
    for _ in range(n):
        m0, m1 = rng.randint(0, 4), rng.randint(0, 4)
        g0, g1 = rand_inc(rng, m0, 10), rand_inc(rng, m1, 10)
        if (m0, m1) not in cache:
            cache[m0, m1] = {(a.row.images, b.row.images) for a, b in enumerate_pair_maps(m0, m1)}
        h = IncMap.onto(set(g0) | set(g1))
        back = {v: i + 1 for i, v in enumerate(h.images)}
        pi0 = tuple(back[v] for v in g0)
        pi1 = tuple(back[v] for v in g1)
        assert (pi0, pi1) in cache[m0, m1], (g0, g1)
        assert h.compose(IncMap(pi0)).images == g0 and h.compose(IncMap(pi1)).images == g1
    return n


def antichain(n):
    """``y[1,2] y[2,3] ... y[n-1,n] y[n,1]`` in the generic family."""
    return GM.monomial([Variable(Family.GEN, (i, i % n + 1)) for i in range(1, n + 1)])


def check_antichain(max_n=8):
    """No cycle monomial equivariantly divides a longer one (diagonal action)."""
    cases = 0
    for a in range(2, max_n + 1):
        for b in range(a + 1, max_n + 1):
            assert find_divisor_map(antichain(a), antichain(b), MonoidKind.DIAGONAL, GM) is None, (a, b)
            cases += 1
    return cases


# --- reduction and S-pairs ------------------------------------------------------------


def _evaluate_trace(basis, trace, kind, order, field):
    """``sum c * t * g(b) / lc(b)`` over the trace."""
    total = Polynomial.zero(order, field)
    for idx, rows, cols, t, c in trace:
        b = basis[idx].monic()
        if rows is not None:
            g = _element_from_raw(kind, rows, cols)
            b = apply(g, b)
        total = total + b.mul_term(t, c)
    return total


def _element_from_raw(kind, rows, cols):
    if kind is MonoidKind.DIAGONAL:
        return MonoidElement.diagonal(rows[1:])
    return MonoidElement.product(rows[1:], cols[1:])


def check_reduction(n=CASES, seed=SEED + 5):
    """Reduction terminates with strictly decreasing leading monomials and
    ``f - reduce(f, B)`` equals the recorded combination of shifted basis elements."""
    rng = random.Random(seed)
    for _ in range(n):
        order = rng.choice((TF, GM))
        field = rng.choice((GF2, GF7, QQ))
        kind = rng.choice(_kinds(order))
        basis = [rand_poly(rng, order, field, top=3, deg=2, terms=3) for _ in range(rng.randint(1, 3))]
        basis = [b for b in basis if b]
        f = rand_poly(rng, order, field, top=5, deg=4, terms=6)
        full = rng.random() < 0.5
        trace = []
        r = reduce(f, basis, "equivariant", kind, full=full, trace=trace)
        lead = [mono_mul(t, apply(_element_from_raw(kind, rows, cols), basis[i].lm, order)
                         if rows is not None else basis[i].lm)
                for i, rows, cols, t, _ in trace]
        if not full:
            assert all(order.compare(a, b) > 0 for a, b in zip(lead, lead[1:])), lead
        assert f - r == _evaluate_trace(basis, trace, kind, order, field)
        # nothing left to reduce at the top (or anywhere, for full reduction)
        red = Reducer(order, field, kind)
        for b in basis:
            red.add(b)
        if r:
            checked = [m for m, _ in r.terms] if full else [r.lm]
            assert all(red.find(m) is None for m in checked)
    return n


def check_spair_equivariance(n=CASES, seed=SEED + 6):
    """h S(g0 b0, g1 b1) = S(h g0 b0, h g1 b1)."""
    rng = random.Random(seed)
    for _ in range(n):
        order = rng.choice((TF, GM))
        field = rng.choice((GF2, GF7, QQ))
        kind = rng.choice(_kinds(order))
        b0 = rand_poly(rng, order, field, top=3)
        b1 = rand_poly(rng, order, field, top=3)
        if not b0 or not b1:
            continue
        g0 = rand_element(rng, order, kind, 3, 5)
        g1 = rand_element(rng, order, kind, 3, 5)
        h = rand_element(rng, order, kind, 5, 9)
        f0, f1 = apply(g0, b0), apply(g1, b1)
        lhs = apply(h, s_polynomial(f0, f1))
        rhs = s_polynomial(apply(h, f0), apply(h, f1))
        assert lhs == rhs, (b0, b1, g0, g1, h)
    return n
