"""JSON algebra files.

    {"name": "SL2", "carrier": 2,
     "labels": ["0", "1"],                                  (optional)
     "ops": [{"symbol": "m", "arity": 2, "table": [0, 0, 0, 1]}],
     "relations": [{"symbol": "R", "arity": 2, "tuples": [[0, 1]]}]}   (optional)

Tables are flat and row-major: the entry for (a_1..a_k) sits at
sum(a_i * n**(k-1-i)).
"""

from __future__ import annotations

import json
from pathlib import Path

from .algebra import FiniteAlgebra
from .errors import SchemaError
from .power import RelationStructure

_TOP_KEYS = {"name", "carrier", "labels", "ops", "relations"}


def _require(cond, message):
    if not cond:
        raise SchemaError(message)


def _is_int(x):
    return isinstance(x, int) and not isinstance(x, bool)


def algebra_from_dict(data):
    """Validate a decoded file; returns ``(FiniteAlgebra, RelationStructure or None)``."""
    _require(isinstance(data, dict), "top level must be an object")
    extra = set(data) - _TOP_KEYS
    _require(not extra, f"unknown keys: {sorted(extra)}")
    _require("carrier" in data and "ops" in data, "'carrier' and 'ops' are required")
    n = data["carrier"]
    _require(_is_int(n) and n >= 1, "'carrier' must be a positive integer")
    name = data.get("name", "A")
    _require(isinstance(name, str), "'name' must be a string")
    labels = data.get("labels")
    if labels is not None:
        _require(isinstance(labels, list) and len(labels) == n
                 and all(isinstance(x, str) for x in labels)
                 and len(set(labels)) == n, "'labels' must be n distinct strings")
        labels = tuple(labels)
    ops = data["ops"]
    _require(isinstance(ops, list), "'ops' must be a list")
    signature, tables = [], []
    for i, op in enumerate(ops):
        _require(isinstance(op, dict) and set(op) == {"symbol", "arity", "table"},
                 f"op #{i} needs exactly 'symbol', 'arity' and 'table'")
        sym, arity, table = op["symbol"], op["arity"], op["table"]
        _require(isinstance(sym, str) and sym, f"op #{i}: symbol must be a nonempty string")
        _require(_is_int(arity) and arity >= 0, f"op {sym!r}: arity must be a natural number")
        _require(isinstance(table, list) and len(table) == n ** arity,
                 f"op {sym!r}: table must have {n ** arity} entries")
        for j, v in enumerate(table):
            _require(_is_int(v) and 0 <= v < n, f"op {sym!r}: entry {j} = {v!r} outside 0..{n - 1}")
        signature.append((sym, arity))
        tables.append(tuple(table))
    alg = FiniteAlgebra(name, n, tuple(signature), tuple(tables), labels)
    rels = data.get("relations")
    rs = None
    if rels is not None:
        _require(isinstance(rels, list), "'relations' must be a list")
        parsed = []
        for i, rel in enumerate(rels):
            _require(isinstance(rel, dict) and set(rel) == {"symbol", "arity", "tuples"},
                     f"relation #{i} needs exactly 'symbol', 'arity' and 'tuples'")
            sym, arity, tuples = rel["symbol"], rel["arity"], rel["tuples"]
            _require(isinstance(sym, str) and sym, f"relation #{i}: bad symbol")
            _require(_is_int(arity) and arity >= 1, f"relation {sym!r}: arity must be >= 1")
            _require(isinstance(tuples, list) and all(
                isinstance(t, list) and all(_is_int(x) for x in t) for t in tuples),
                f"relation {sym!r}: tuples must be lists of integers")
            parsed.append((sym, arity, frozenset(tuple(t) for t in tuples)))
        rs = RelationStructure(n, tuple(parsed))
    return alg, rs


def algebra_to_dict(alg, relations=None):
    out = {"name": alg.name, "carrier": alg.size}
    if alg.labels is not None:
        out["labels"] = list(alg.labels)
    out["ops"] = [{"symbol": s, "arity": a, "table": list(t)}
                  for (s, a), t in zip(alg.signature, alg.tables)]
    if relations is not None:
        out["relations"] = [{"symbol": s, "arity": a, "tuples": [list(t) for t in sorted(ts)]}
                            for s, a, ts in relations.relations]
    return out


def loads(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON: {e}") from None
    return algebra_from_dict(data)


def load(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise SchemaError(f"cannot read {path}: {e.strerror}") from None
    return loads(text)


def dumps(alg, relations=None):
    return json.dumps(algebra_to_dict(alg, relations), indent=2)


def dump(alg, path, relations=None):
    Path(path).write_text(dumps(alg, relations) + "\n", encoding="utf-8")
