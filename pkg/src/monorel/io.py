"""Relation files and machine-readable reports.

A relation file is a JSON object with ``n`` and exactly one construction
key: ``matrix``, ``graph_basis``, ``normal_cone`` or ``structured``.
Reports are JSON with floats printed as 17 significant digits, so equal
reports serialize to identical bytes; ``+inf``, ``-inf`` and ``nan`` are
written as string tokens.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, List

import numpy as np

from .linalg import DEFAULT_TOL, DimensionError, Subspace, Tolerance, canonical_basis, orthonormalize
from .relation import LinearRelation, from_graph_basis, from_matrix, from_structured, normal_cone

SCHEMA_VERSION = 1
CONSTRUCTION_KEYS = ("matrix", "graph_basis", "normal_cone", "structured")


class SchemaError(ValueError):
    """Malformed relation file."""


def _array(value, name, shape=None) -> np.ndarray:
    try:
        a = np.array(value, dtype=float)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"{name}: expected numbers ({exc})") from None
    if not np.all(np.isfinite(a)):
        raise SchemaError(f"{name}: entries must be finite")
    if shape is not None and a.shape != shape:
        raise DimensionError(f"{name}: expected shape {shape}, got {a.shape}")
    return a


def _vectors(value, name, length) -> np.ndarray:
    if not isinstance(value, list):
        raise SchemaError(f"{name}: expected a list of vectors")
    if not value:
        return np.zeros((0, length))
    a = _array(value, name)
    if a.ndim != 2 or a.shape[1] != length:
        raise DimensionError(f"{name}: vectors must have length {length}")
    return a


def parse_relation(data, tol: Tolerance = DEFAULT_TOL) -> LinearRelation:
    """Build a relation from a parsed file (dict) or its JSON text."""
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise SchemaError("relation file must be a JSON object")
    n = data.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise SchemaError("'n' must be a positive integer")
    keys = [k for k in CONSTRUCTION_KEYS if k in data]
    if len(keys) != 1:
        raise SchemaError(f"exactly one of {', '.join(CONSTRUCTION_KEYS)} required, found {keys or 'none'}")
    unknown = set(data) - {"n", *CONSTRUCTION_KEYS}
    if unknown:
        raise SchemaError(f"unknown keys: {sorted(unknown)}")
    key = keys[0]
    body = data[key]
    if key == "matrix":
        return from_matrix(_array(body, "matrix", (n, n)), tol)
    if key == "graph_basis":
        return from_graph_basis(n, _vectors(body, "graph_basis", 2 * n).T, tol)
    if key == "normal_cone":
        return normal_cone(orthonormalize(_vectors(body, "normal_cone", n).T, tol, ambient_dim=n))
    if not isinstance(body, dict):
        raise SchemaError("structured: expected an object")
    extra = set(body) - {"symmetric", "skew", "domain_basis", "offset_basis"}
    if extra:
        raise SchemaError(f"structured: unknown keys {sorted(extra)}")
    P = _array(body["symmetric"], "symmetric", (n, n)) if "symmetric" in body else None
    K = _array(body["skew"], "skew", (n, n)) if "skew" in body else None
    D = Z = None
    if "domain_basis" in body:
        D = orthonormalize(_vectors(body["domain_basis"], "domain_basis", n).T, tol, ambient_dim=n)
    if "offset_basis" in body:
        Z = orthonormalize(_vectors(body["offset_basis"], "offset_basis", n).T, tol, ambient_dim=n)
    return from_structured(P, K, D, Z, n=n, tol=tol)


def load_relation(path, tol: Tolerance = DEFAULT_TOL) -> LinearRelation:
    with open(path, encoding="utf-8") as fh:
        return parse_relation(fh.read(), tol)


def subspace_payload(S: Subspace) -> dict:
    return {"dim": S.dim, "basis": canonical_basis(S).tolist()}


def relation_payload(A: LinearRelation) -> dict:
    """The graph_basis relation file for A (canonical basis rows)."""
    return {"n": A.n, "graph_basis": canonical_basis(A.graph).tolist()}


def _encode(obj: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return '"nan"'
        if math.isinf(x):
            return '"+inf"' if x > 0 else '"-inf"'
        return "%.17g" % x
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float, np.number, bool)) for v in obj):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + _encode(v, indent, level + 1) for v in obj) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


_TOKENS = {"+inf": math.inf, "-inf": -math.inf, "nan": math.nan}


def _decode(obj):
    if isinstance(obj, str):
        return _TOKENS.get(obj, obj)
    if isinstance(obj, list):
        return [_decode(v) for v in obj]
    if isinstance(obj, dict):
        return {k: _decode(v) for k, v in obj.items()}
    return obj


def format_value(v: float, digits: int = 17) -> str:
    """Extended-real value as text: ``+inf`` for infinity, else ``digits`` significant digits."""
    v = float(v)
    if not math.isfinite(v):
        return _encode(v, 0, 0).strip('"')
    return "%.*g" % (digits, v + 0.0)


@dataclass
class Report:
    command: List[str]
    tolerance: dict
    results: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "command": list(self.command),
            "tolerance": dict(self.tolerance),
            "results": self.results,
            "failures": self.failures,
        }

    def to_json(self) -> str:
        return _encode(self.to_dict(), 2, 0) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Report":
        d = json.loads(text)
        if d.get("schema") != SCHEMA_VERSION:
            raise SchemaError(f"unsupported report schema {d.get('schema')!r}")
        return cls(d["command"], _decode(d["tolerance"]), _decode(d["results"]), _decode(d["failures"]))

    def __eq__(self, other):
        if not isinstance(other, Report):
            return NotImplemented
        # compare serialized text so that nan tokens match
        return _encode(self.to_dict(), 0, 0) == _encode(other.to_dict(), 0, 0)


def dumps(obj) -> str:
    """Serialize with the report float format (used for relation files too)."""
    return _encode(obj, 2, 0) + "\n"
