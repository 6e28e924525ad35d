"""JSON input and output for the command-line front end."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .beck import BeckModule, trivial_extension
from .errors import InputError
from .fpalg import AlgebraHom, AlgebraPresentation, FiniteModule, FiniteRingTable, TableMap

__all__ = [
    "load_json",
    "dumps",
    "read_algebra",
    "read_surjection",
    "read_beck_module",
    "read_hom",
    "jsonable",
]


def load_json(path):
    """Parse a JSON file; malformed or missing input raises :class:`InputError`."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}") from exc


def jsonable(obj):
    """Convert numpy scalars and arrays, tuples and sets into plain JSON values."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(jsonable(v) for v in obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(jsonable(obj), sort_keys=True, indent=2) + "\n"


def _require(obj, *keys):
    if not isinstance(obj, dict):
        raise InputError("expected a JSON object")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise InputError(f"missing field {missing[0]!r}")


def read_algebra(obj, name="") -> AlgebraPresentation:
    _require(obj, "base")
    return AlgebraPresentation.from_json(obj, name)


def read_surjection(obj) -> TableMap:
    """``{"total": <table>, "base": <table>, "map": [...]}``."""
    _require(obj, "total", "base", "map")
    D = FiniteRingTable.from_json(obj["total"], obj["total"].get("name", "Z"))
    C = FiniteRingTable.from_json(obj["base"], obj["base"].get("name", "Y"))
    if len(obj["map"]) != D.size:
        raise InputError(f"map has {len(obj['map'])} entries for a table of size {D.size}")
    return TableMap(D, C, obj["map"])


def read_beck_module(obj) -> BeckModule:
    """``{"base": <table>, "module": {"add": ..., "zero": ..., "action": ...}}``."""
    _require(obj, "base", "module")
    C = FiniteRingTable.from_json(obj["base"], obj["base"].get("name", "C"))
    M = FiniteModule.from_json(C, obj["module"])
    M.name = obj["module"].get("name", "M")
    return trivial_extension(C, M)


def read_hom(obj) -> AlgebraHom:
    """``{"domain": <algebra>, "codomain": <table>, "images": [...]}``."""
    _require(obj, "domain", "codomain", "images")
    X = read_algebra(obj["domain"], obj["domain"].get("name", "X"))
    Y = FiniteRingTable.from_json(obj["codomain"], obj["codomain"].get("name", "Y"))
    return AlgebraHom(X, Y, obj["images"]).verify()
