"""Equivariant Groebner bases for ideals stable under increasing index maps.

The main entry points are :func:`buchberger`, :func:`check_criterion`,
:func:`interreduce` and :func:`truncate_basis`; :mod:`eqgb.twofactor` holds the
Gaussian two-factor scenario and :mod:`eqgb.cli` the command line.
"""

from .engine import (
    EQUIVARIANT,
    ORDINARY,
    BasisState,
    CriterionReport,
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
from .field import Field, FieldElement, FieldError
from .monoid import IncMap, MonoidElement, MonoidKind, apply, enumerate_pair_maps, find_divisor_map
from .poly import Family, Polynomial, TermOrder, Variable, gen, sym
from .polytext import PolyTextError, format_polynomial, parse_polynomial
from .storage import checkpoint_load, checkpoint_save, load_basis, save_basis

__version__ = "0.1.0"

__all__ = [
    "EQUIVARIANT",
    "ORDINARY",
    "BasisState",
    "CriterionReport",
    "Family",
    "Field",
    "FieldElement",
    "FieldError",
    "IncMap",
    "Limits",
    "MonoidElement",
    "MonoidKind",
    "PolyTextError",
    "Polynomial",
    "TermOrder",
    "Variable",
    "apply",
    "buchberger",
    "check_criterion",
    "checkpoint_load",
    "checkpoint_save",
    "enumerate_pair_maps",
    "equivariant_s_pairs",
    "find_divisor_map",
    "format_polynomial",
    "gen",
    "interreduce",
    "leading_ideal",
    "load_basis",
    "minimal_monomials",
    "parse_polynomial",
    "reduce",
    "s_polynomial",
    "save_basis",
    "sym",
    "truncate_basis",
]
