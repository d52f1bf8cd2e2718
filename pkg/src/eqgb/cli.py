"""Command-line front end: ``eqgb run|check|reduce|truncate|summarize``."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import twofactor
from .engine import EQUIVARIANT, ORDINARY, check_criterion, reduce, truncate_basis
from .monoid import MonoidKind
from .polytext import format_polynomial, parse_polynomial
from .scenario import (
    EXIT_CONFIG,
    EXIT_IO,
    EXIT_OK,
    EXIT_VERIFY,
    ScenarioConfig,
    run,
)
from .storage import format_basis, load_basis

# flags that map one-to-one onto ScenarioConfig fields
_RUN_FLAGS = [
    ("--scenario", str),
    ("--field", str),
    ("--order", str),
    ("--monoid", str),
    ("--mode", str),
    ("--rank", int),
    ("--seed-file", str),
    ("--max-pairs", int),
    ("--max-degree", int),
    ("--max-largest-index", int),
    ("--checkpoint-every", int),
    ("--log-every", int),
    ("--threads", int),
    ("--output-dir", str),
    ("--resume", str),
]


def _basis_args(p):
    p.add_argument("basis", help="basis file (PolyText with header)")
    p.add_argument("--field", help="override the field in the file header")
    p.add_argument("--mode", choices=[EQUIVARIANT, ORDINARY], help="override the header mode")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="eqgb", description="Equivariant Groebner bases under Inc(N).")
    ap.add_argument("-v", "--verbose", action="store_true", help="progress logging to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run a scenario end to end")
    p.add_argument("--config", help="JSON file with ScenarioConfig fields")
    for flag, typ in _RUN_FLAGS:
        p.add_argument(flag, type=typ, default=None)
    p.add_argument("--deterministic", dest="deterministic", action="store_true", default=None)
    p.add_argument("--no-deterministic", dest="deterministic", action="store_false")
    p.add_argument("--no-criterion", dest="verify_criterion", action="store_false", default=None)
    p.add_argument("--no-parameterization", dest="verify_parameterization", action="store_false", default=None)
    p.add_argument("--truncation-check", dest="truncation_checks", type=int, action="append", metavar="N")

    p = sub.add_parser("check", help="equivariant Buchberger criterion on a basis file")
    _basis_args(p)
    p.add_argument("--max-li-sum", type=int, help="only pairs with li(b0) + li(b1) at most this")
    p.add_argument("--all-pairs", action="store_true", help="reduce every S-polynomial (no chain criterion)")

    p = sub.add_parser("reduce", help="reduce one polynomial against a basis file")
    _basis_args(p)
    p.add_argument("polynomial", help="PolyText, or @file")
    p.add_argument("--top", action="store_true", help="top reduction only")

    p = sub.add_parser("truncate", help="all increasing-map images into {1..n}")
    _basis_args(p)
    p.add_argument("n", type=int)
    p.add_argument("-o", "--output", help="write a basis file instead of stdout")

    p = sub.add_parser("summarize", help="counts and degrees by largest index")
    _basis_args(p)
    p.add_argument("--json", action="store_true")
    return ap


def _config(args) -> ScenarioConfig:
    base = ScenarioConfig.from_file(args.config).__dict__ if args.config else {}
    d = dict(base)
    for key in [f.lstrip("-").replace("-", "_") for f, _ in _RUN_FLAGS] + [
        "deterministic",
        "verify_criterion",
        "verify_parameterization",
        "truncation_checks",
    ]:
        val = getattr(args, key)
        if val is not None:
            d[key] = val
    return ScenarioConfig.from_dict(d).with_env()


def _load(args):
    from .field import Field

    field = Field.parse(args.field) if args.field else None
    return load_basis(args.basis, field=field, mode=args.mode)


def _cmd_run(args) -> int:
    cfg = _config(args)
    rep = run(cfg)
    print(json.dumps(rep.as_dict(), indent=2, sort_keys=True))
    return rep.exit_code


def _cmd_check(args) -> int:
    bf = _load(args)
    rep = check_criterion(bf.polys, bf.mode, bf.kind or MonoidKind.DIAGONAL,
                          max_li_sum=args.max_li_sum, chain=not args.all_pairs)
    print(f"criterion {'satisfied' if rep else 'NOT satisfied'}: "
          f"{rep.base_pairs} element pairs, {rep.spolys_checked} S-polynomials reduced, "
          f"{rep.chain_skips} chain skips, {rep.coprime_skips} coprime skips")
    for i, j, g0, g1, r in rep.failures:
        print(f"  pair ({i}, {j}) maps {g0} {g1}: remainder {format_polynomial(r)}")
    return EXIT_OK if rep else EXIT_VERIFY


def _cmd_reduce(args) -> int:
    bf = _load(args)
    text = args.polynomial
    if text.startswith("@"):
        with open(text[1:]) as fh:
            text = fh.read().strip()
    f = parse_polynomial(text, bf.order, bf.field)
    r = reduce(f, bf.polys, bf.mode, bf.kind or MonoidKind.DIAGONAL, full=not args.top)
    print(format_polynomial(r))
    return EXIT_OK


def _cmd_truncate(args) -> int:
    bf = _load(args)
    kind = bf.kind or MonoidKind.DIAGONAL
    polys = truncate_basis(bf.polys, args.n, kind)
    text = format_basis(polys, bf.field, bf.order, None, ORDINARY)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_summarize(args) -> int:
    bf = _load(args)
    s = twofactor.summarize(bf.polys)
    if args.json:
        print(json.dumps(s.as_dict(), indent=2, sort_keys=True))
    else:
        print(s.table())
        print(f"total {s.total}, off-diagonal {s.off_diagonal_total}")
    return EXIT_OK


_COMMANDS = {
    "run": _cmd_run,
    "check": _cmd_check,
    "reduce": _cmd_reduce,
    "truncate": _cmd_truncate,
    "summarize": _cmd_summarize,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(format="%(asctime)s %(levelname)s %(message)s")
    for h in logging.getLogger().handlers:
        h.setLevel(logging.INFO if args.verbose else logging.WARNING)
    if args.verbose:
        logging.getLogger("eqgb").setLevel(logging.INFO)
    try:
        return _COMMANDS[args.command](args)
    except ValueError as e:  # config, basis-file and PolyText errors
        print(f"eqgb: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as e:
        print(f"eqgb: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
