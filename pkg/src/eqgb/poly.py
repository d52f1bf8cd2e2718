"""Variables, monomials, term orders and sparse polynomials.

A monomial is a tuple of integer variable codes sorted in descending order,
one entry per unit of exponent (``y21^2*y31`` is ``(c31, c21, c21)``). Codes
are laid out so that integer order is the variable order of the active term
order; lexicographic comparison of monomials is then plain tuple comparison
and a monomial's degree is its length.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping

from .field import Field

SHIFT = 20
MASK = (1 << SHIFT) - 1
DIAG = 1 << (2 * SHIFT + 1)
MAX_INDEX = MASK

Monomial = tuple  # tuple[int, ...], descending

ONE: Monomial = ()


class Family(str, enum.Enum):
    SYM = "sym-matrix"
    GEN = "gen-matrix"
    SINGLE = "single-index"


# single-index variable names and their code tags
SINGLE_NAMES = ("x", "s", "t")


@dataclass(frozen=True, order=True)
class Variable:
    family: Family
    indices: tuple
    name: str = "y"

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        arity = 1 if self.family is Family.SINGLE else 2
        if len(idx) != arity:
            raise ValueError(f"{self.family.value} variables take {arity} indices, got {idx}")
        if any(i < 1 or i > MAX_INDEX for i in idx):
            raise ValueError(f"indices must lie in 1..{MAX_INDEX}, got {idx}")
        if self.family is Family.SYM and idx[0] < idx[1]:
            idx = (idx[1], idx[0])
        if self.family is Family.SINGLE and self.name not in SINGLE_NAMES:
            raise ValueError(f"unknown single-index name {self.name!r}")
        object.__setattr__(self, "indices", idx)

    def __str__(self):
        return f"{self.name}[{','.join(map(str, self.indices))}]"


def variable_make(family, indices, name: str | None = None) -> Variable:
    family = Family(family)
    if name is None:
        name = "x" if family is Family.SINGLE else "y"
    return Variable(family, tuple(indices), name)


def sym(i: int, j: int) -> Variable:
    return Variable(Family.SYM, (i, j))


def gen(i: int, j: int) -> Variable:
    return Variable(Family.GEN, (i, j))


class TermOrder(str, enum.Enum):
    """Lexicographic term orders compatible with increasing index maps.

    ``two-factor-lex``: every diagonal ``y[i,i]`` exceeds every off-diagonal
    variable, diagonals ordered by ``i``, off-diagonals by ``(i, j)`` with ``i``
    most significant. ``gen-matrix-lex``: ``(i, j)`` lexicographically.
    ``single-index-lex``: ``x[i] > x[j]`` iff ``i > j``.
    """

    TWO_FACTOR = "two-factor-lex"
    GEN_MATRIX = "gen-matrix-lex"
    SINGLE_INDEX = "single-index-lex"

    @property
    def family(self) -> Family:
        return _ORDER_FAMILY[self]

    def code(self, v: Variable) -> int:
        if v.family is not self.family:
            raise ValueError(f"{self.value} does not govern {v.family.value} variables")
        if self is TermOrder.SINGLE_INDEX:
            return (v.indices[0] << 2) | SINGLE_NAMES.index(v.name)
        i, j = v.indices
        if self is TermOrder.TWO_FACTOR and i == j:
            return DIAG | i
        return (i << SHIFT) | j

    def variable(self, c: int) -> Variable:
        if self is TermOrder.SINGLE_INDEX:
            return Variable(Family.SINGLE, (c >> 2,), SINGLE_NAMES[c & 3])
        if self is TermOrder.TWO_FACTOR and c & DIAG:
            i = c & MASK
            return Variable(Family.SYM, (i, i))
        return Variable(self.family, (c >> SHIFT, c & MASK))

    def monomial(self, exponents: Mapping[Variable, int] | Iterable[Variable]) -> Monomial:
        """Encode ``{Variable: exponent}`` (or an iterable of factors) as a monomial."""
        if isinstance(exponents, Mapping):
            items = exponents.items()
        else:
            items = Counter(exponents).items()
        codes = []
        for v, e in items:
            if e < 0:
                raise ValueError("negative exponent")
            codes.extend([self.code(v)] * e)
        return tuple(sorted(codes, reverse=True))

    def exponents(self, m: Monomial) -> dict:
        return {self.variable(c): e for c, e in Counter(m).items()}

    def compare(self, a: Monomial, b: Monomial) -> int:
        """-1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
        return (a > b) - (a < b)


_ORDER_FAMILY = {
    TermOrder.TWO_FACTOR: Family.SYM,
    TermOrder.GEN_MATRIX: Family.GEN,
    TermOrder.SINGLE_INDEX: Family.SINGLE,
}


def code_indices(order: TermOrder, c: int) -> tuple:
    if order is TermOrder.SINGLE_INDEX:
        return (c >> 2,)
    if c & DIAG:
        return (c & MASK, c & MASK)
    return (c >> SHIFT, c & MASK)


def code_max_index(c: int) -> int:
    """Largest index of a matrix-family code (diagonal or ``i >= j`` layouts)."""
    if c & DIAG:
        return c & MASK
    return max(c >> SHIFT, c & MASK)


def monomial_largest_index(order: TermOrder, m: Monomial) -> int:
    if not m:
        return 0
    if order is TermOrder.SINGLE_INDEX:
        return m[0] >> 2
    if order is TermOrder.TWO_FACTOR:
        return max(code_max_index(c) for c in m)
    return max(max(c >> SHIFT, c & MASK) for c in m)


# --- monomial arithmetic -----------------------------------------------------


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b, reverse=True))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True iff ``a`` divides ``b``."""
    nb = len(b)
    if len(a) > nb:
        return False
    j = 0
    for x in a:
        while j < nb and b[j] > x:
            j += 1
        if j == nb or b[j] != x:
            return False
        j += 1
    return True


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    """``a / b``; raises ``ValueError`` unless ``b`` divides ``a``."""
    out = []
    j = 0
    nb = len(b)
    for x in a:
        if j < nb and b[j] == x:
            j += 1
        elif j < nb and b[j] > x:
            raise ValueError("monomial does not divide")
        else:
            out.append(x)
    if j != nb:
        raise ValueError("monomial does not divide")
    return tuple(out)


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        x, y = a[i], b[j]
        if x == y:
            out.append(x)
            i += 1
            j += 1
        elif x > y:
            out.append(x)
            i += 1
        else:
            out.append(y)
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def mono_gcd(a: Monomial, b: Monomial) -> Monomial:
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        x, y = a[i], b[j]
        if x == y:
            out.append(x)
            i += 1
            j += 1
        elif x > y:
            i += 1
        else:
            j += 1
    return tuple(out)


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    return not set(a).intersection(b)


def monomial_ops(op: str, a: Monomial, b: Monomial) -> Monomial:
    return {"mul": mono_mul, "div": mono_div, "lcm": mono_lcm, "gcd": mono_gcd}[op](a, b)


# --- polynomials ---------------------------------------------------------------


class Polynomial:
    """Immutable sparse polynomial; ``terms`` is strictly descending in the order."""

    __slots__ = ("order", "field", "terms", "_hash")

    def __init__(self, order: TermOrder, field: Field, terms=()):
        self.order = order
        self.field = field
        self.terms = tuple(terms)
        self._hash = None

    @classmethod
    def from_dict(cls, order, field, d: Mapping) -> "Polynomial":
        """Build from ``{monomial: payload}``; zero payloads are dropped."""
        return cls(order, field, sorted(((m, c) for m, c in d.items() if c), reverse=True))

    @classmethod
    def zero(cls, order, field) -> "Polynomial":
        return cls(order, field, ())

    @classmethod
    def constant(cls, order, field, c=1) -> "Polynomial":
        c = field.convert(c) if isinstance(c, int) else c
        return cls(order, field, ((ONE, c),) if c else ())

    @classmethod
    def from_monomial(cls, order, field, m: Monomial, c=None) -> "Polynomial":
        return cls(order, field, ((m, field.one if c is None else c),))

    # accessors
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    @property
    def lm(self) -> Monomial:
        return self.terms[0][0]

    @property
    def lc(self):
        return self.terms[0][1]

    @property
    def lt(self):
        return self.terms[0]

    def monomials(self):
        return [m for m, _ in self.terms]

    def as_dict(self) -> dict:
        return dict(self.terms)

    def degree(self) -> int:
        return max((len(m) for m, _ in self.terms), default=-1)

    def largest_index(self) -> int:
        return max((monomial_largest_index(self.order, m) for m, _ in self.terms), default=0)

    def codes(self) -> set:
        return {c for m, _ in self.terms for c in m}

    def variables(self) -> set:
        return {self.order.variable(c) for c in self.codes()}

    def _like(self, other: "Polynomial"):
        if self.order is not other.order or self.field != other.field:
            raise ValueError("polynomials live in different rings")

    # arithmetic
    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._like(other)
        d = dict(self.terms)
        add = self.field.add
        for m, c in other.terms:
            d[m] = add(d[m], c) if m in d else c
        return Polynomial.from_dict(self.order, self.field, d)

    def __neg__(self) -> "Polynomial":
        neg = self.field.neg
        return Polynomial(self.order, self.field, [(m, neg(c)) for m, c in self.terms])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, c) -> "Polynomial":
        if not c:
            return Polynomial.zero(self.order, self.field)
        mul = self.field.mul
        return Polynomial(self.order, self.field, [(m, mul(c, a)) for m, a in self.terms])

    def mul_term(self, m: Monomial, c=None) -> "Polynomial":
        """``c * m * self``; the term order is multiplicative so no re-sort is needed."""
        if c is not None and not c:
            return Polynomial.zero(self.order, self.field)
        if c is None:
            terms = [(mono_mul(m, a), b) for a, b in self.terms]
        else:
            mul = self.field.mul
            terms = [(mono_mul(m, a), mul(c, b)) for a, b in self.terms]
        return Polynomial(self.order, self.field, terms)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._like(other)
        d: dict = {}
        add, mul = self.field.add, self.field.mul
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = mono_mul(m1, m2)
                c = mul(c1, c2)
                d[m] = add(d[m], c) if m in d else c
        return Polynomial.from_dict(self.order, self.field, d)

    def __pow__(self, e: int) -> "Polynomial":
        out = Polynomial.constant(self.order, self.field, 1)
        for _ in range(e):
            out = out * self
        return out

    def monic(self) -> "Polynomial":
        if not self.terms or self.lc == self.field.one:
            return self
        return self.scale(self.field.inv(self.lc))

    def map_coefficients(self, field: Field, fn=None) -> "Polynomial":
        """Move to another field, converting payloads through ``(num, den)``."""
        conv = fn or (lambda c: field.convert(*self.field.to_fraction(c)))
        return Polynomial.from_dict(self.order, field, {m: conv(c) for m, c in self.terms})

    # comparison / display
    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.order is other.order and self.field == other.field and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.order, self.field, self.terms))
        return self._hash

    def __str__(self):
        from .polytext import format_polynomial

        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({self})"


def poly_arith(op: str, *args):
    """Dispatch ``add``, ``scale``, ``mul-term`` or ``mul`` by name."""
    if op == "add":
        return args[0] + args[1]
    if op == "scale":
        c, f = args
        return f.scale(c)
    if op == "mul-term":
        m, f = args[0], args[1]
        return f.mul_term(m, *args[2:])
    if op == "mul":
        return args[0] * args[1]
    raise ValueError(f"unknown polynomial operation {op!r}")


def largest_index(p: Polynomial) -> int:
    return p.largest_index()


def compare(order: TermOrder, a: Monomial, b: Monomial) -> str:
    return ("less", "equal", "greater")[order.compare(a, b) + 1]
