"""Exact arithmetic on the extended half-line [0, inf].

Values are nonnegative :class:`fractions.Fraction` numbers or the tagged top
element :data:`INF`.  The order is the numeric one; read as truth values,
0 is *true* and inf is *false*, so "r >= s" numerically means "r implies s".

    >>> Cost("3/2") + Cost(1)
    Cost('5/2')
    >>> ominus(Cost(3), Cost(5))
    Cost('0')
    >>> ominus(INF, INF)
    Cost('0')
"""
from __future__ import annotations

from decimal import Decimal, InvalidOperation
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Union

__all__ = [
    "Cost", "INF", "ZERO", "CostLike",
    "add", "ominus", "join", "meet", "inf_of", "sup_of", "parse_cost",
]

CostLike = Union["Cost", int, Fraction, str]

_INF_STRINGS = {"inf", "+inf", "infinity", "∞"}


@total_ordering
class Cost:
    """An element of [0, inf]; immutable."""

    __slots__ = ("_v", "_h")

    def __init__(self, value: CostLike = 0):
        if isinstance(value, Cost):
            v = value._v
        elif isinstance(value, str):
            v = _parse(value)
        elif isinstance(value, bool):
            raise TypeError("bool is not a cost")
        elif isinstance(value, (int, Fraction)):
            v = Fraction(value)
        else:
            raise TypeError(f"cannot build a Cost from {type(value).__name__}")
        if v is not None and v < 0:
            raise ValueError(f"costs are nonnegative, got {v}")
        object.__setattr__(self, "_v", v)
        object.__setattr__(self, "_h", None)

    def __setattr__(self, name, value):
        raise AttributeError("Cost is immutable")

    @classmethod
    def _raw(cls, v):
        c = object.__new__(cls)
        object.__setattr__(c, "_v", v)
        object.__setattr__(c, "_h", None)
        return c

    @property
    def is_inf(self) -> bool:
        return self._v is None

    @property
    def is_finite(self) -> bool:
        return self._v is not None

    @property
    def value(self) -> Fraction:
        """The finite value; raises for inf."""
        if self._v is None:
            raise ValueError("inf has no finite value")
        return self._v

    # ordering ------------------------------------------------------------
    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._v == other._v

    def __lt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._v is None:
            return False
        if other._v is None:
            return True
        return self._v < other._v

    def __hash__(self):
        h = self._h
        if h is None:  # Fraction hashing is slow and subsets hash costs a lot
            h = hash(self._v) if self._v is not None else hash(float("inf"))
            object.__setattr__(self, "_h", h)
        return h

    # arithmetic ----------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __or__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return join(self, other)

    __ror__ = __or__

    def __and__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return meet(self, other)

    __rand__ = __and__

    def ominus(self, other: CostLike) -> "Cost":
        return ominus(self, Cost(other))

    # text ----------------------------------------------------------------
    def __str__(self):
        if self._v is None:
            return "inf"
        if self._v.denominator == 1:
            return str(self._v.numerator)
        return f"{self._v.numerator}/{self._v.denominator}"

    def __repr__(self):
        return f"Cost({str(self)!r})"

    def __reduce__(self):
        return (Cost, (str(self),))


def _parse(text: str) -> Fraction | None:
    s = text.strip().lower()
    if s in _INF_STRINGS:
        return None
    if not s:
        raise ValueError("empty cost string")
    try:
        if "/" in s:
            num, den = s.split("/", 1)
            return Fraction(int(num), int(den))
        d = Decimal(s)
        if not d.is_finite():
            raise ValueError(s)
        return Fraction(d)
    except (ValueError, ZeroDivisionError, InvalidOperation) as exc:
        raise ValueError(f"not a cost: {text!r}") from exc


def parse_cost(text: str) -> Cost:
    """Parse ``"inf"``, ``"p/q"`` or a decimal literal exactly."""
    return Cost(text)


def _coerce(x):
    if isinstance(x, Cost):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        if x < 0:
            return NotImplemented
        return Cost._raw(Fraction(x))
    return NotImplemented


ZERO = Cost._raw(Fraction(0))
INF = Cost._raw(None)


def add(u: Cost, v: Cost) -> Cost:
    if u._v is None or v._v is None:
        return INF
    return Cost._raw(u._v + v._v)


def ominus(v: Cost, u: Cost) -> Cost:
    """Truncated subtraction ``max(v - u, 0)``: the least w with u + w >= v.

    inf - inf is 0 because u + 0 >= v already holds when u is inf.
    """
    if u._v is None:
        return ZERO
    if v._v is None:
        return INF
    d = v._v - u._v
    return Cost._raw(d) if d > 0 else ZERO


def join(u: Cost, v: Cost) -> Cost:
    return u if v <= u else v


def meet(u: Cost, v: Cost) -> Cost:
    return u if u <= v else v


def inf_of(values: Iterable[Cost]) -> Cost:
    """Infimum; the empty infimum is inf."""
    best = INF
    for c in values:
        if c < best:
            best = c
    return best


def sup_of(values: Iterable[Cost]) -> Cost:
    """Supremum; the empty supremum is 0."""
    best = ZERO
    for c in values:
        if c > best:
            best = c
    return best
