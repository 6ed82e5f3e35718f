"""JSON (de)serialization for the CLI file formats.

All artifacts carry `"schema": "sidon-lattice/1"`.  Integers above 2^53 are
written as strings so the files survive lossy JSON consumers.
"""

from __future__ import annotations

from . import algebra, codes, sets
from .algebra import AbelianGroup
from .codes import FiniteCode, LatticeCode
from .sets import BhSet, DifferenceSet

SCHEMA = "sidon-lattice/1"
_INT_SAFE = 2**53


def enc_int(x: int):
    return x if abs(x) <= _INT_SAFE else str(x)


def dec_int(x) -> int:
    return int(x)


def _enc_vec(v):
    return [enc_int(x) for x in v]


def _dec_vec(v):
    return tuple(dec_int(x) for x in v)


def group_to_json(g: AbelianGroup) -> list:
    return _enc_vec(g.invariant_factors)


def group_from_json(data) -> AbelianGroup:
    return algebra.group_make(_dec_vec(data)) if data else AbelianGroup(())


def set_to_json(obj) -> dict:
    if isinstance(obj, DifferenceSet):
        return {
            "schema": SCHEMA,
            "type": "difference-set",
            "group": group_to_json(obj.group),
            "elements": [_enc_vec(e) for e in obj.elements],
            "params": {"v": enc_int(obj.v), "k": obj.k, "lambda": obj.lam},
        }
    if isinstance(obj, BhSet):
        return {
            "schema": SCHEMA,
            "type": "bh-set",
            "group": group_to_json(obj.group),
            "h": obj.h,
            "elements": [_enc_vec(e) for e in obj.elements],
        }
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def set_from_json(data) -> DifferenceSet | BhSet:
    _check_schema(data)
    group = group_from_json(data["group"])
    elements = [_dec_vec(e) for e in data["elements"]]
    if data["type"] == "difference-set":
        return sets.difference_set(group, elements)
    if data["type"] == "bh-set":
        return sets.bh_set(group, elements, int(data["h"]))
    raise ValueError(f"unknown set type {data['type']!r}")


def code_to_json(lattice: LatticeCode, finite: FiniteCode | None = None) -> dict:
    return {
        "schema": SCHEMA,
        "type": "code",
        "v": enc_int(finite.v if finite else lattice.det_abs),
        "n": lattice.n,
        "parity_row": _enc_vec(finite.parity_row) if finite else None,
        "basis": [_enc_vec(row) for row in lattice.basis],
        "source": lattice.source,
    }


def code_from_json(data) -> tuple[LatticeCode, FiniteCode | None]:
    _check_schema(data)
    if data["type"] != "code":
        raise ValueError(f"expected a code artifact, got {data['type']!r}")
    basis = algebra.make_matrix([_dec_vec(row) for row in data["basis"]])
    lattice = codes._lattice(basis, dict(data.get("source") or {}))
    finite = None
    if data.get("parity_row") is not None:
        parity = _dec_vec(data["parity_row"])
        v = dec_int(data["v"])
        finite = FiniteCode(v, len(parity), parity, (0,) + parity)
    return lattice, finite


def _check_schema(data):
    if not isinstance(data, dict) or data.get("schema") != SCHEMA:
        raise ValueError(f"expected an artifact with schema {SCHEMA!r}")
