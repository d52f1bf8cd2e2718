import json
import random
from itertools import combinations
from pathlib import Path

import pytest
import sympy as sp

from eqgb.engine import (
    EQUIVARIANT,
    ORDINARY,
    Limits,
    buchberger,
    check_criterion,
    equivariant_s_pairs,
    interreduce,
    leading_ideal,
    minimal_monomials,
    reduce,
    s_polynomial,
    truncate_basis,
)
from eqgb.field import Field
from eqgb.monoid import MonoidElement, MonoidKind, apply, interval_unions
from eqgb.poly import Polynomial, TermOrder, mono_coprime, mono_lcm, sym
from eqgb.polytext import parse_polynomial
from eqgb.twofactor import all_minors, determinant, generic_minor, pentad, seed_minors

import props

TF, GM = TermOrder.TWO_FACTOR, TermOrder.GEN_MATRIX
QQ, GF2, GF7 = Field(), Field(2), Field(7)
D, P = MonoidKind.DIAGONAL, MonoidKind.PRODUCT
FROZEN = json.loads((Path(__file__).parent / "oracles" / "frozen.json").read_text())


def poly(text, field=QQ, order=TF):
    return parse_polynomial(text, order, field)


def rank1_seeds(field):
    return [f for f in (determinant(r, c, field) for r, c in interval_unions(2, 2)) if f]


def minors2(n, field):
    pairs = combinations(range(1, n + 1), 2)
    subsets = list(pairs)
    return [f for f in (determinant(r, c, field) for r in subsets for c in subsets) if f]


# --- reduction ---------------------------------------------------------------------------


def test_reduce_shifted_copy():
    b = seed_minors(QQ)[0]
    g = MonoidElement.diagonal((2, 5, 7))
    assert not reduce(apply(g, b), [b])
    f = pentad(QQ)
    assert reduce(f, []) == f


def test_reduce_properties():
    assert props.check_reduction() == 1000


def test_reduce_combination_of_generic_minor():
    """Random sums of shifted multiples of the 2x2 generic minor reduce to 0."""
    d = generic_minor(1, QQ)
    rng = random.Random(5)
    for _ in range(50):
        total = Polynomial.zero(GM, QQ)
        for _ in range(rng.randint(1, 4)):
            g = MonoidElement.product(props.rand_inc(rng, 2, 6), props.rand_inc(rng, 2, 6))
            m = props.rand_mono(rng, GM, top=6, deg=2)
            total = total + apply(g, d).mul_term(m, QQ.convert(rng.randint(-3, 3) or 1))
        assert not reduce(total, [d], kind=P, full=True)


def test_ordinary_mode_ignores_shifts():
    b = poly("y[2,1]")
    assert reduce(poly("y[3,2]"), [b], mode=ORDINARY) == poly("y[3,2]")
    assert not reduce(poly("y[3,2]"), [b], mode=EQUIVARIANT)


# --- S-polynomials -------------------------------------------------------------------------


def test_s_polynomial_examples():
    f = pentad(QQ)
    assert not s_polynomial(f, f)
    assert not s_polynomial(poly("y[2,1]"), poly("y[3,1]"))
    rng = random.Random(9)
    for _ in range(100):
        a, b = props.rand_poly(rng, TF, GF7), props.rand_poly(rng, TF, GF7)
        if not a or not b:
            continue
        s = s_polynomial(a, b)
        assert not s or TF.compare(s.lm, mono_lcm(a.lm, b.lm)) < 0


def test_spair_equivariance():
    assert props.check_spair_equivariance() == 1000


def test_equivariant_s_pairs_constants():
    one = Polynomial.constant(TF, QQ, 1)
    assert equivariant_s_pairs(one, one) == []


def _brute_pairs(b0, b1):
    """Non-coprime shifted pairs over all interval unions, self pairs halved."""
    out = []
    for s0, s1 in interval_unions(b0.largest_index(), b1.largest_index()):
        if b0 == b1 and s0 >= s1:
            continue
        l0 = apply(MonoidElement.diagonal(s0), b0.lm, TF)
        l1 = apply(MonoidElement.diagonal(s1), b1.lm, TF)
        if not mono_coprime(l0, l1):
            out.append(s_polynomial(apply(MonoidElement.diagonal(s0), b0),
                                    apply(MonoidElement.diagonal(s1), b1)))
    return out


@pytest.mark.parametrize("i, j", [(0, 0), (0, 1), (1, 1), (2, 5)])
def test_equivariant_s_pairs_vs_brute(i, j):
    seeds = sorted(seed_minors(GF2), key=lambda f: (f.largest_index(), f.lm))
    b0, b1 = seeds[i], seeds[j]
    stats = {}
    got = equivariant_s_pairs(b0, b1, D, stats)
    brute = _brute_pairs(b0, b1)
    assert sorted(str(s.monic()) for s in got if s) == sorted(str(s.monic()) for s in brute if s)
    assert len(got) == len(brute)
    total = sum(1 for s0, s1 in interval_unions(b0.largest_index(), b1.largest_index())
                if b0 != b1 or s0 < s1)
    assert stats["coprime_skips"] == total - len(got)


# --- Buchberger and the criterion ----------------------------------------------------------


def test_monomial_seed_terminates():
    st = buchberger([poly("y[2,1]")])
    assert st.complete and st.elements == [poly("y[2,1]")]


def test_generic_rank1_is_basis():
    d = generic_minor(1, QQ)
    assert check_criterion([d], EQUIVARIANT, P).passed
    st = buchberger([d], kind=P)
    assert st.complete and st.elements == [d.monic()]
    assert st.stats["new_elements"] == 1


def test_generic_rank1_needs_product_monoid():
    # with one map acting on both indices the orbit misses y[1,2] y[2,3] style minors
    d = generic_minor(1, QQ)
    assert not check_criterion([d], EQUIVARIANT, D).passed


def test_criterion_failure_witness():
    # shifts by (1,2) and (1,3) share lm y[1,1]; their S-polynomial y[3,1]^2 - y[2,1]^2 is stuck
    rep = check_criterion([poly("y[1,1] - y[2,1]^2")])
    assert not rep.passed
    i, j, g0, g1, r = rep.failures[0]
    assert (i, j) == (0, 0) and isinstance(g0, MonoidElement)
    assert r.monic() == poly("y[3,1]^2 - y[2,1]^2")
    # y[3,2] is a shift of y[2,1], so this one is a basis
    assert check_criterion([poly("y[2,1]"), poly("y[2,2]*y[3,1] - y[3,2]")]).passed


def test_criterion_singleton_monomial():
    assert check_criterion([poly("y[3,3]*y[2,1]")]).passed
    assert check_criterion([]).passed


def test_rank1_symmetric_basis():
    for field in (GF2, QQ):
        st = buchberger(rank1_seeds(field))
        assert st.complete
        basis = interreduce(st.elements)
        assert len(basis) == 6
        assert check_criterion(basis).passed


def _sympy_leading_ideal(n, polys):
    gens = [sp.Symbol(f"y{i}_{i}") for i in range(n, 0, -1)]
    gens += [sp.Symbol(f"y{i}_{j}") for i in range(n, 0, -1) for j in range(i - 1, 0, -1)]

    def to_sp(f):
        e = 0
        for m, c in f.terms:
            t = sp.Rational(*QQ.to_fraction(c))
            for code in m:
                v = TF.variable(code)
                t *= sp.Symbol(f"y{v.indices[0]}_{v.indices[1]}")
            e += t
        return e

    G = sp.groebner([to_sp(f) for f in polys], *gens, order="lex")
    lms = [sp.Poly(g, *gens).monoms(order="lex")[0] for g in G.exprs]
    return sorted(sorted([g.name, e] for g, e in zip(gens, m) if e) for m in _minimal(lms))


def _minimal(ms):
    ms = sorted(set(ms), key=lambda m: (sum(m), m))
    out = []
    for m in ms:
        if not any(all(a <= b for a, b in zip(g, m)) for g in out):
            out.append(m)
    return out


def keys(monos):
    out = []
    for m in monos:
        d = {}
        for c in m:
            v = TF.variable(c)
            name = f"y{v.indices[0]}_{v.indices[1]}"
            d[name] = d.get(name, 0) + 1
        out.append(sorted([k, e] for k, e in d.items()))
    return sorted(out)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_rank1_truncation_matches_oracles(n):
    basis = interreduce(buchberger(rank1_seeds(QQ)).elements)
    trunc = leading_ideal(truncate_basis(basis, n))
    ordinary = leading_ideal(buchberger(minors2(n, QQ), mode=ORDINARY).elements)
    assert trunc == ordinary
    assert keys(trunc) == _sympy_leading_ideal(n, minors2(n, QQ))


@pytest.mark.parametrize("field", ["QQ", "GF(2)"])
@pytest.mark.parametrize("n", [4, 5])
def test_ordinary_oracle_vs_sympy(field, n):
    f = Field.parse(field)
    ordinary = buchberger(all_minors(n, f), mode=ORDINARY)
    assert ordinary.complete
    assert check_criterion(ordinary.elements, ORDINARY).passed
    assert keys(leading_ideal(ordinary.elements)) == FROZEN["leading_ideal"][f"{field}/{n}"]


def test_limits_stop_and_resume():
    seeds = rank1_seeds(GF2)
    full = buchberger(seeds)
    part = buchberger(seeds, limits=Limits(max_pairs=20))
    assert not part.complete and part.stats["pairs_processed"] == 20
    done = buchberger(state=part)
    assert done.complete and done.elements == full.elements


def test_largest_index_cap_defers():
    st = buchberger(rank1_seeds(GF2), limits=Limits(max_largest_index=3))
    assert not st.complete and st.deferred
    assert all(f.largest_index() <= 4 for f in st.elements)
    done = buchberger(state=st)
    assert done.complete and not done.deferred


# --- interreduction and truncation ----------------------------------------------------


def test_interreduce_drops_shifted_copies():
    b = pentad(GF2)
    g = MonoidElement.diagonal((1, 2, 4, 6, 7))
    assert interreduce([apply(g, b), b]) == [b]


def test_interreduce_idempotent():
    once = interreduce(seed_minors(GF7))
    assert interreduce(once) == once
    assert all(f.lc == GF7.one for f in once)


def test_interreduce_constant():
    assert interreduce([poly("y[2,1]"), poly("3")]) == [poly("1")]


def test_truncate_counts():
    assert len(truncate_basis([pentad()], 5)) == 1
    assert len(truncate_basis([pentad()], 6)) == 6
    assert truncate_basis([pentad()], 4) == []
    d = generic_minor(1, QQ)
    assert len(truncate_basis([d], 3, P)) == 9


def test_minimal_monomials():
    a = TF.monomial([sym(2, 1)])
    b = TF.monomial([sym(2, 1), sym(3, 1)])
    c = TF.monomial([sym(3, 2)])
    assert minimal_monomials([b, a, c, a]) == sorted([a, c])


# --- chain criterion -------------------------------------------------------------------


def test_chain_check_agrees_with_all_pairs():
    rng = random.Random(props.SEED + 11)
    verdicts = set()
    skipped = 0
    for _ in range(150):
        field = rng.choice((GF2, GF7, QQ))
        mode = rng.choice((EQUIVARIANT, ORDINARY))
        basis = [props.rand_poly(rng, TF, field, top=3, deg=3, terms=2) for _ in range(rng.randint(1, 6))]
        basis = [b for b in basis if b]
        if mode == ORDINARY and rng.random() < 0.5:
            basis = buchberger(basis, mode=ORDINARY, order=TF, field=field, chain=False).elements
        bound = rng.choice((None, None, 4, 5))
        full = check_criterion(basis, mode, max_li_sum=bound, chain=False)
        fast = check_criterion(basis, mode, max_li_sum=bound)
        assert full.passed == fast.passed, basis
        assert fast.spolys_checked + fast.chain_skips == full.spolys_checked
        verdicts.add((full.passed, fast.chain_skips > 0))
        skipped += fast.chain_skips > 0
    assert verdicts == {(True, True), (True, False), (False, True), (False, False)}
    assert skipped > 20


def test_chain_skips_happen_on_a_basis():
    basis = buchberger(all_minors(4, GF2), mode=ORDINARY).elements
    rep = check_criterion(basis, ORDINARY)
    full = check_criterion(basis, ORDINARY, chain=False)
    assert rep.passed and full.passed and rep.chain_skips > 0


@pytest.mark.parametrize("field", [GF2, QQ])
def test_chain_run_matches_plain_run(field):
    seeds = rank1_seeds(field)
    plain = buchberger(seeds, chain=False)
    fast = buchberger(seeds)
    assert interreduce(fast.elements) == interreduce(plain.elements)
    o_plain = buchberger(all_minors(5, field), mode=ORDINARY, chain=False)
    o_fast = buchberger(all_minors(5, field), mode=ORDINARY)
    assert leading_ideal(o_fast.elements) == leading_ideal(o_plain.elements)
    assert o_fast.stats["chain_skips"] > 0 and o_plain.stats["chain_skips"] == 0


def test_chain_run_matches_plain_run_capped_two_factor():
    seeds = interreduce(seed_minors(GF2))
    lim = Limits(max_largest_index=6)
    plain = buchberger(seeds, limits=lim, chain=False)
    fast = buchberger(seeds, limits=lim)
    assert interreduce(fast.elements) == interreduce(plain.elements)
