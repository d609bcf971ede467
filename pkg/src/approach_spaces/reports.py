from __future__ import annotations

from dataclasses import dataclass, field, fields, is_dataclass
from fractions import Fraction
from typing import Any

from .quantale import Cost


def to_jsonable(obj: Any) -> Any:
    """Costs become strings, tuples and sets become lists, dataclasses dicts."""
    if isinstance(obj, Cost):
        return str(obj)
    if isinstance(obj, Fraction):
        return str(Cost(obj))
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, float, str)):
        return obj
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    if is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (frozenset, set)):
        return sorted(to_jsonable(v) for v in obj)
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return str(obj)


@dataclass(frozen=True)
class Witness:
    """A failed inequality ``lhs >= rhs`` and the tuple it failed at."""

    check: str
    at: dict
    lhs: Cost
    rhs: Cost

    def to_dict(self):
        return {"check": self.check, "at": to_jsonable(self.at),
                "lhs": str(self.lhs), "rhs": str(self.rhs)}


@dataclass
class CheckReport:
    """Outcome of a check; a failing report always carries its witness."""

    ok: bool
    check: str
    witness: Any = None
    stats: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.ok != (self.witness is None):
            raise ValueError("a report fails exactly when it has a witness")

    def __bool__(self):
        return self.ok

    def to_dict(self):
        return {
            "check": self.check,
            "verdict": "pass" if self.ok else "fail",
            "witness": to_jsonable(self.witness),
            "stats": to_jsonable(self.stats),
        }
