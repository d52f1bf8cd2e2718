"""Plain-text polynomial format.

    poly   := ["-"] term (("+" | "-") term)*
    term   := coeff | [coeff "*"] factor ("*" factor)*
    factor := name "[" int ("," int)* "]" ["^" int]
    coeff  := int ["/" int]

``name`` is ``y`` for the matrix families and ``x``, ``s`` or ``t`` for the
single-index family. Whitespace is insignificant.
"""

from __future__ import annotations

import re
from collections import Counter

from .field import Field, FieldError
from .poly import Polynomial, TermOrder, Variable, mono_mul

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\S))")


class PolyTextError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


def _tokens(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            out.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            out.append(("name", m.group(2), start))
        else:
            out.append(("op", m.group(3), start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


def parse_polynomial(text: str, order: TermOrder, field: Field) -> Polynomial:
    order = TermOrder(order)
    toks = _tokens(text)
    k = 0

    def peek():
        return toks[k]

    def take(kind=None, value=None):
        nonlocal k
        t = toks[k]
        if (kind and t[0] != kind) or (value is not None and t[1] != value):
            want = value if value is not None else kind
            raise PolyTextError(f"expected {want!r}, found {t[1]!r}", t[2])
        k += 1
        return t

    def factor():
        name, pos = take("name")[1:]
        if name not in ("x", "s", "t", "y"):
            raise PolyTextError(f"unknown variable family {name!r}", pos)
        take("op", "[")
        idx = [take("int")[1]]
        while peek()[:2] == ("op", ","):
            take()
            idx.append(take("int")[1])
        take("op", "]")
        exp = 1
        if peek()[:2] == ("op", "^"):
            take()
            exp = take("int")[1]
        try:
            v = Variable(order.family, tuple(idx), name)
            c = order.code(v)
        except ValueError as e:
            raise PolyTextError(str(e), pos) from None
        return (c,) * exp

    def term(sign):
        num, den = 1, 1
        mono = ()
        if peek()[0] == "int":
            num = take()[1]
            if peek()[:2] == ("op", "/"):
                take()
                den = take("int")[1]
            if peek()[:2] != ("op", "*"):
                return mono, sign * num, den
            take()
        mono = factor()
        while peek()[:2] == ("op", "*"):
            take()
            mono = mono_mul(mono, factor())
        return mono, sign * num, den

    d: dict = {}
    sign = 1
    if peek()[:2] == ("op", "-"):
        take()
        sign = -1
    while True:
        pos = peek()[2]
        mono, num, den = term(sign)
        try:
            c = field.convert(num, den)
        except FieldError as e:
            raise PolyTextError(str(e), pos) from None
        d[mono] = field.add(d[mono], c) if mono in d else c
        t = peek()
        if t[0] == "end":
            break
        if t[:2] == ("op", "+"):
            sign = 1
        elif t[:2] == ("op", "-"):
            sign = -1
        else:
            raise PolyTextError(f"unexpected {t[1]!r}", t[2])
        take()
    return Polynomial.from_dict(order, field, d)


def format_monomial(order: TermOrder, m) -> str:
    if not m:
        return "1"
    parts = []
    for c, e in Counter(m).items():  # insertion order keeps the descending layout
        v = str(order.variable(c))
        parts.append(v if e == 1 else f"{v}^{e}")
    return "*".join(parts)


def _coeff(field: Field, c) -> tuple[int, int]:
    n, d = field.to_fraction(c)
    if field.p and n > field.p // 2:
        n -= field.p
    return n, d


def format_polynomial(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    out = []
    for m, c in f.terms:
        n, d = _coeff(f.field, c)
        neg = n < 0
        n = abs(n)
        cs = str(n) if d == 1 else f"{n}/{d}"
        if not m:
            body = cs
        elif cs == "1":
            body = format_monomial(f.order, m)
        else:
            body = f"{cs}*{format_monomial(f.order, m)}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(out)
