"""JSON input formats for matroids, weights and halfspace normals.

A matroid file holds one object, one of

    {"n": 4, "flats": [[1], [2], ...]}
    {"n": 3, "bases": [[1, 2], [1, 3], [2, 3]]}
    {"type": "uniform", "r": 2, "n": 3}
    {"type": "boolean", "n": 3}
    {"type": "fano"}
    {"type": "graphic", "edges": [[1, 2], [2, 3], [1, 3]]}

with 1-based elements.  Weights are {"omega": ["4", "-3/2", ...]} and
normals {"normal": ["2", "-1"]}; entries are exact rational strings (ints
are accepted too).
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from . import matroid as mt
from . import subsets as ss
from .errors import InputError, ParseError


def _load_json(text: str, where: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        lines = text.splitlines()
        ctx = lines[exc.lineno - 1] if 0 < exc.lineno <= len(lines) else ""
        raise ParseError(f"{where}:{exc.lineno}:{exc.colno}: {exc.msg}\n    {ctx}") from None


def read_text(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def _int_list(v, what: str) -> list[int]:
    if not isinstance(v, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
        raise ParseError(f"{what} must be a list of integers, got {v!r}")
    return v


def matroid_from_obj(obj) -> mt.Matroid:
    if not isinstance(obj, dict):
        raise ParseError("a matroid description must be a JSON object")
    kind = obj.get("type")
    if kind == "uniform":
        return mt.uniform(_need_int(obj, "r"), _need_int(obj, "n"))
    if kind == "boolean":
        return mt.boolean(_need_int(obj, "n"))
    if kind == "fano":
        return mt.fano()
    if kind == "graphic":
        edges = obj.get("edges")
        if not isinstance(edges, list):
            raise ParseError("graphic matroid needs an 'edges' list")
        return mt.graphic([tuple(_int_list(e, "edge")) for e in edges])
    if kind is not None:
        raise ParseError(f"unknown matroid type {kind!r}")
    n = _need_int(obj, "n")
    if "flats" in obj:
        flats = [_int_list(F, "flat") for F in _need_list(obj, "flats")]
        return mt.from_flats(n, flats)
    if "bases" in obj:
        bases = [_int_list(B, "basis") for B in _need_list(obj, "bases")]
        return mt.from_bases(n, bases)
    raise ParseError("matroid object needs 'flats', 'bases' or a 'type'")


def _need_int(obj, key) -> int:
    v = obj.get(key)
    if not isinstance(v, int) or isinstance(v, bool):
        raise ParseError(f"field {key!r} must be an integer, got {v!r}")
    return v


def _need_list(obj, key) -> list:
    v = obj.get(key)
    if not isinstance(v, list):
        raise ParseError(f"field {key!r} must be a list")
    return v


def load_matroid(path) -> tuple[mt.Matroid, str]:
    """Matroid from a file, together with the sha256 of the file text."""
    text = read_text(path)
    return matroid_from_obj(_load_json(text, str(path))), digest(text)


def parse_rationals(value, what: str = "vector") -> list:
    """Rationals from a list or from a comma-separated string like "4,-3/2"."""
    if isinstance(value, str):
        s = value.strip()
        if s.startswith("["):
            value = _load_json(s, what)
        else:
            value = [x for x in s.split(",") if x.strip()]
    if not isinstance(value, list) or not value:
        raise ParseError(f"{what} must be a nonempty list of rationals")
    try:
        return [ss.to_fraction(x.strip() if isinstance(x, str) else x) for x in value]
    except (InputError, ValueError, ZeroDivisionError):
        raise ParseError(f"{what} has a non-rational entry: {value!r}") from None


def parse_weight(value, n: int | None = None) -> ss.Weight:
    """Weight from "1,-2,3/2", a JSON list, or a path to {"omega": [...]}."""
    if isinstance(value, str) and Path(value).is_file():
        obj = _load_json(read_text(value), value)
        if not isinstance(obj, dict) or "omega" not in obj:
            raise ParseError(f"{value}: expected an object with an 'omega' list")
        value = obj["omega"]
    w = ss.Weight(parse_rationals(value, "omega"))
    if n is not None and w.n != n:
        raise ParseError(f"omega has {w.n} entries, the ground set has {n}")
    return w


def parse_normal(value, dim: int | None = None) -> list:
    if isinstance(value, str) and Path(value).is_file():
        obj = _load_json(read_text(value), value)
        if not isinstance(obj, dict) or "normal" not in obj:
            raise ParseError(f"{value}: expected an object with a 'normal' list")
        value = obj["normal"]
    v = parse_rationals(value, "normal")
    if dim is not None and len(v) != dim:
        raise ParseError(f"normal has {len(v)} entries, expected {dim}")
    return v
