"""Basis files and checkpoints.

A basis file is plain PolyText, one polynomial per line, after a short
``#``-comment header naming the field, order, monoid and mode::

    # eqgb basis 1
    # field: GF(2)
    # order: two-factor
    # monoid: diagonal
    # mode: equivariant
    # elements: 42
    y[3,3]*y[2,1]^2 - ...

A checkpoint is JSON with a sha256 over the canonical payload, so a truncated
or edited file is refused instead of resumed.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .engine import EQUIVARIANT, ORDINARY, BasisState
from .field import Field
from .monoid import MonoidKind
from .poly import Polynomial, TermOrder
from .polytext import format_polynomial, parse_polynomial

BASIS_VERSION = 1
CHECKPOINT_VERSION = 1
CHECKPOINT_FORMAT = "eqgb-checkpoint"


class CheckpointError(Exception):
    pass


class ChecksumError(CheckpointError):
    pass


class VersionError(CheckpointError):
    pass


class BasisFileError(ValueError):
    pass


@dataclass
class BasisFile:
    field: Field
    order: TermOrder
    kind: MonoidKind | None
    mode: str
    polys: list


def _kind_name(kind) -> str:
    return kind.value if kind is not None else "none"


def _parse_kind(text: str):
    return None if text in ("none", "") else MonoidKind(text)


def _atomic_write(path: Path, text: str):
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)


def format_basis(
    polys: Sequence[Polynomial],
    field: Field,
    order: TermOrder,
    kind=MonoidKind.DIAGONAL,
    mode: str = EQUIVARIANT,
) -> str:
    lines = [
        f"# eqgb basis {BASIS_VERSION}",
        f"# field: {field}",
        f"# order: {TermOrder(order).value}",
        f"# monoid: {_kind_name(kind)}",
        f"# mode: {mode}",
        f"# elements: {len(polys)}",
    ]
    lines += [format_polynomial(p) for p in polys]
    return "\n".join(lines) + "\n"


def save_basis(path, polys, field, order, kind=MonoidKind.DIAGONAL, mode=EQUIVARIANT):
    _atomic_write(Path(path), format_basis(polys, field, order, kind, mode))


def parse_basis(text: str, field: Field | None = None, order=None, kind=None, mode=None) -> BasisFile:
    """Read a basis file. Header values fill in whatever the caller leaves as None."""
    header = {}
    body = []
    for n, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s:
            continue
        if s.startswith("#"):
            key, sep, val = s[1:].partition(":")
            if sep:
                header[key.strip()] = val.strip()
            continue
        body.append((n, s))
    if field is None:
        field = Field.parse(header.get("field", "QQ"))
    if order is None:
        order = header.get("order", TermOrder.TWO_FACTOR.value)
    order = TermOrder(order)
    if kind is None:
        kind = _parse_kind(header.get("monoid", "diagonal"))
    mode = mode or header.get("mode", EQUIVARIANT)
    if mode not in (EQUIVARIANT, ORDINARY):
        raise BasisFileError(f"unknown mode {mode!r}")
    polys = []
    for n, s in body:
        try:
            polys.append(parse_polynomial(s, order, field))
        except ValueError as e:
            raise BasisFileError(f"line {n}: {e}") from None
    if "elements" in header and int(header["elements"]) != len(polys):
        raise BasisFileError(f"header says {header['elements']} elements, found {len(polys)}")
    return BasisFile(field, order, kind, mode, polys)


def load_basis(path, **kw) -> BasisFile:
    return parse_basis(Path(path).read_text(), **kw)


# --- checkpoints ------------------------------------------------------------------------


def _digest(payload: dict) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def state_to_payload(state: BasisState) -> dict:
    return {
        "field": str(state.field),
        "order": state.order.value,
        "mode": state.mode,
        "monoid": _kind_name(state.kind),
        "polys": [format_polynomial(p) for p in state.polys],
        "alive": [bool(a) for a in state.alive],
        # the heap list is stored as is so the pop order survives a reload
        "queue": [list(t) for t in state.queue],
        "deferred": [list(t) for t in state.deferred],
        "witnesses": sorted(state.witnesses),
        "seq": state.seq,
        "stats": dict(state.stats),
        "complete": state.complete,
    }


def payload_to_state(p: dict) -> BasisState:
    field = Field.parse(p["field"])
    order = TermOrder(p["order"])
    st = BasisState(order, field, p["mode"], _parse_kind(p["monoid"]))
    st.polys = [parse_polynomial(s, order, field) for s in p["polys"]]
    st.alive = list(p["alive"])
    st.queue = [tuple(t) for t in p["queue"]]
    st.deferred = [tuple(t) for t in p["deferred"]]
    st.witnesses = set(p.get("witnesses", ()))
    st.seq = p["seq"]
    st.stats.update(p["stats"])
    st.complete = p["complete"]
    if len(st.polys) != len(st.alive):
        raise CheckpointError("polys and alive flags differ in length")
    return st


def checkpoint_dumps(state: BasisState) -> str:
    payload = state_to_payload(state)
    doc = {
        "format": CHECKPOINT_FORMAT,
        "version": CHECKPOINT_VERSION,
        "sha256": _digest(payload),
        "payload": payload,
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def checkpoint_loads(text: str) -> BasisState:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ChecksumError(f"checkpoint is not valid JSON ({e.msg}); file truncated?") from None
    if not isinstance(doc, dict) or doc.get("format") != CHECKPOINT_FORMAT:
        raise CheckpointError("not an eqgb checkpoint")
    if doc.get("version") != CHECKPOINT_VERSION:
        raise VersionError(f"checkpoint version {doc.get('version')} unsupported (want {CHECKPOINT_VERSION})")
    payload = doc.get("payload")
    if not isinstance(payload, dict) or _digest(payload) != doc.get("sha256"):
        raise ChecksumError("checkpoint checksum mismatch")
    return payload_to_state(payload)


def checkpoint_save(state: BasisState, path):
    _atomic_write(Path(path), checkpoint_dumps(state))


def checkpoint_load(path) -> BasisState:
    return checkpoint_loads(Path(path).read_text())
