"""JSON file formats.

Space file::

    {"points": ["p", "q"], "conv": [["0", "1"], ["1", "0"]]}

Row index is the source ``z`` of the convergence, column the point ``x``.
Matrix file: ``{"rows": [...], "cols": [...], "entries": [[...]]}``.
Function file: ``{"values": {"p": "0", "q": "1/2"}}``.
Costs are written as integers, decimals, ``p/q`` or ``inf``.
"""
from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

from .approach import ApproachSpace, square
from .numrel import NumRel, PointSet
from .quantale import Cost

__all__ = [
    "FormatError", "read_json", "parse_space", "load_space", "dump_space", "save_space",
    "parse_matrix", "dump_matrix", "parse_function", "load_function", "dump_function",
    "digest",
]


class FormatError(ValueError):
    """A malformed input file; ``where`` is a line:column or a JSON path."""

    def __init__(self, source: str, where: str, msg: str):
        super().__init__(f"{source}: {where}: {msg}")
        self.source, self.where, self.msg = source, where, msg


def digest(path: str | Path) -> str:
    return "sha256:" + hashlib.sha256(Path(path).read_bytes()).hexdigest()


def read_json(path: str | Path) -> Any:
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(str(path), f"line {exc.lineno}, column {exc.colno}", exc.msg) from None


def _cost(src, where, s) -> Cost:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise FormatError(src, where, f"expected a cost string, got {s!r}")
    try:
        return Cost(s)
    except ValueError as exc:
        raise FormatError(src, where, str(exc)) from None


def _labels(src, key, obj) -> list[str]:
    labs = obj.get(key) if isinstance(obj, dict) else None
    if not isinstance(labs, list) or not all(isinstance(x, str) for x in labs):
        raise FormatError(src, key, "expected a list of string labels")
    if len(set(labs)) != len(labs):
        raise FormatError(src, key, "duplicate label")
    return labs


def _grid(src, key, obj, nrows, ncols) -> list[list[Cost]]:
    rows = obj.get(key)
    if not isinstance(rows, list) or len(rows) != nrows:
        raise FormatError(src, key, f"expected {nrows} rows")
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != ncols:
            raise FormatError(src, f"{key}[{i}]", f"expected {ncols} entries")
        out.append([_cost(src, f"{key}[{i}][{j}]", s) for j, s in enumerate(row)])
    return out


def parse_space(obj: Any, pseudo: bool = False, source: str = "<space>") -> ApproachSpace:
    """Build a space; raises :class:`InvalidSpace` when the axioms fail."""
    points = _labels(source, "points", obj)
    rows = _grid(source, "conv", obj, len(points), len(points))
    return ApproachSpace(square(points, rows), pseudo=pseudo)


def load_space(path: str | Path, pseudo: bool = False) -> ApproachSpace:
    return parse_space(read_json(path), pseudo, str(path))


def dump_space(space: ApproachSpace) -> dict:
    return {"points": space.points.labels(),
            "conv": [[str(c) for c in row] for row in space.matrix.entries]}


def save_space(space: ApproachSpace, path: str | Path) -> None:
    Path(path).write_text(json.dumps(dump_space(space), indent=2) + "\n", encoding="utf-8")


def parse_matrix(obj: Any, source: str = "<matrix>") -> NumRel:
    rows = _labels(source, "rows", obj)
    cols = _labels(source, "cols", obj)
    ents = _grid(source, "entries", obj, len(rows), len(cols))
    return NumRel(PointSet(rows), PointSet(cols), tuple(tuple(r) for r in ents))


def dump_matrix(r: NumRel) -> dict:
    return {"rows": r.source.labels(), "cols": r.target.labels(),
            "entries": [[str(c) for c in row] for row in r.entries]}


def parse_function(obj: Any, points: PointSet, source: str = "<function>") -> tuple[Cost, ...]:
    """Values aligned with ``points``; every label must appear exactly once."""
    vals = obj.get("values") if isinstance(obj, dict) else None
    if not isinstance(vals, dict):
        raise FormatError(source, "values", "expected an object mapping labels to costs")
    labs = points.labels()
    extra = sorted(set(vals) - set(labs))
    if extra:
        raise FormatError(source, f"values.{extra[0]}", "not a point of the space")
    missing = [x for x in labs if x not in vals]
    if missing:
        raise FormatError(source, f"values.{missing[0]}", "missing value")
    return tuple(_cost(source, f"values.{x}", vals[x]) for x in labs)


def load_function(path: str | Path, points: PointSet) -> tuple[Cost, ...]:
    return parse_function(read_json(path), points, str(path))


def dump_function(points: PointSet, values) -> dict:
    return {"values": {x: str(Cost(v)) for x, v in zip(points.labels(), values)}}
