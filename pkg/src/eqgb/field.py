"""Exact coefficient fields: the rationals and prime fields F_p.

Polynomials store raw payloads for speed (``gmpy2.mpq`` over Q, plain ``int``
residues over F_p). :class:`FieldElement` wraps a payload together with its
field for the public, operator-overloaded interface.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import gmpy2
from gmpy2 import mpq


class FieldError(ArithmeticError):
    """Raised for zero denominators, inverting zero and mixing fields."""


@dataclass(frozen=True)
class Field:
    """A coefficient field: ``Field()`` is Q, ``Field(p)`` is F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p:
            if self.p < 2 or not gmpy2.is_prime(self.p):
                raise FieldError(f"modulus {self.p} is not prime")
            if self.p >= 2**31:
                raise FieldError("prime modulus must be below 2^31")

    @classmethod
    def rationals(cls) -> "Field":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Parse ``"QQ"``, ``"Q"``, ``"GF(p)"``, ``"F_p"`` or a bare prime."""
        t = text.strip().upper().replace(" ", "")
        if t in ("Q", "QQ", "RATIONALS"):
            return cls(0)
        for prefix in ("GF(", "F_", "FF(", "F"):
            if t.startswith(prefix):
                t = t[len(prefix):].rstrip(")")
                break
        try:
            return cls(int(t))
        except ValueError:
            raise FieldError(f"unknown field {text!r}") from None

    @property
    def kind(self) -> str:
        return "prime-field" if self.p else "rationals"

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    def __str__(self):
        return f"GF({self.p})" if self.p else "QQ"

    # raw payload arithmetic -------------------------------------------------

    @property
    def zero(self):
        return 0 if self.p else mpq(0)

    @property
    def one(self):
        return 1 if self.p else mpq(1)

    def convert(self, numerator: int, denominator: int = 1):
        if denominator == 0:
            raise FieldError("zero denominator")
        if not self.p:
            return mpq(numerator, denominator)
        d = denominator % self.p
        if d == 0:
            raise FieldError(f"denominator {denominator} is not invertible mod {self.p}")
        return numerator * pow(d, -1, self.p) % self.p

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def mul(self, a, b):
        return a * b % self.p if self.p else a * b

    def neg(self, a):
        return -a % self.p if self.p else -a

    def inv(self, a):
        if not a:
            raise FieldError("inverse of zero")
        return pow(a, -1, self.p) if self.p else 1 / a

    def to_fraction(self, a) -> tuple[int, int]:
        """(numerator, denominator) of a payload; residues use the range [0, p)."""
        if self.p:
            return int(a), 1
        return int(a.numerator), int(a.denominator)

    def element(self, numerator: int, denominator: int = 1) -> "FieldElement":
        return FieldElement(self, self.convert(numerator, denominator))


def field_make(field: Field, numerator: int, denominator: int = 1) -> "FieldElement":
    return field.element(numerator, denominator)


@dataclass(frozen=True)
class FieldElement:
    field: Field
    value: Any

    def _check(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldError(f"mixed fields {self.field} and {other.field}")

    def __add__(self, other):
        self._check(other)
        return FieldElement(self.field, self.field.add(self.value, other.value))

    def __sub__(self, other):
        self._check(other)
        return FieldElement(self.field, self.field.sub(self.value, other.value))

    def __mul__(self, other):
        self._check(other)
        return FieldElement(self.field, self.field.mul(self.value, other.value))

    def __truediv__(self, other):
        self._check(other)
        return self * other.inverse()

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __bool__(self):
        return bool(self.value)

    def __eq__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.value == other.value

    def __hash__(self):
        return hash((self.field, self.value))

    def __str__(self):
        n, d = self.field.to_fraction(self.value)
        return str(n) if d == 1 else f"{n}/{d}"

    __repr__ = __str__


def field_arith(op: str, a: FieldElement, b: FieldElement | None = None) -> FieldElement:
    """Dispatch ``add``, ``mul``, ``neg`` or ``inv`` by name."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    raise ValueError(f"unknown field operation {op!r}")
