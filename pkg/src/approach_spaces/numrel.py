"""Numerical relations: [0, inf]-valued matrices between finite point sets.

Composition is the min-plus product.  ``compose(r, s)`` means "r, then s",
i.e. ``(s . r)(x, z) = min_y r(x, y) + s(y, z)``.

Order convention, used throughout the package: ``leq(r, r2)`` is the order
of the ordered category, which on entries is the *numeric* ``>=``.  A larger
number is a weaker truth value, so ``leq(r, r2)`` reads "r entails no more
than r2".  Every inequality ``r >= r2`` written between relations in the
approach-space literature is ``leq(r, r2)`` here.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Iterator, Mapping, Sequence, Union

from .quantale import INF, ZERO, Cost, CostLike, add, inf_of, join

__all__ = [
    "PointSet", "NumRel", "DimensionMismatch",
    "compose", "converse", "scale_join", "from_map", "identity", "leq", "label",
]


class DimensionMismatch(ValueError):
    pass


def label(p) -> str:
    """Display label of a point; pairs print as ``(a,b)``."""
    if isinstance(p, tuple):
        return "(" + ",".join(label(q) for q in p) + ")"
    return str(p)


class PointSet:
    """An ordered finite set of distinct hashable points.

    Points are usually string labels, but carriers built by the ultrafilter
    machinery hold ultrafilters, pairs or functions.
    """

    __slots__ = ("elements", "_index", "_hash")

    def __init__(self, elements: Iterable[Hashable]):
        elems = tuple(elements)
        index = {}
        for i, e in enumerate(elems):
            if e in index:
                raise ValueError(f"duplicate point {e!r}")
            index[e] = i
        object.__setattr__(self, "elements", elems)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_hash", hash(elems))

    def __setattr__(self, name, value):
        raise AttributeError("PointSet is immutable")

    def index(self, point) -> int:
        try:
            return self._index[point]
        except KeyError:
            raise KeyError(f"{point!r} is not a point of {self}") from None

    def __contains__(self, point) -> bool:
        return point in self._index

    def __iter__(self) -> Iterator:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, PointSet) and self._hash == other._hash
                and self.elements == other.elements)

    def __hash__(self):
        return self._hash

    def labels(self) -> list[str]:
        return [label(e) for e in self.elements]

    def __repr__(self):
        return "PointSet([" + ", ".join(self.labels()) + "])"

    __str__ = __repr__

    def product(self, other: "PointSet") -> "PointSet":
        return PointSet((x, y) for x in self for y in other)

    @classmethod
    def dedup(cls, elements: Iterable[Hashable]) -> "PointSet":
        """Points in first-occurrence order, duplicates dropped."""
        return cls(dict.fromkeys(elements))


Entries = tuple[tuple[Cost, ...], ...]


@dataclass(frozen=True)
class NumRel:
    """A numerical relation ``source -|-> target``."""

    source: PointSet
    target: PointSet
    entries: Entries

    def __post_init__(self):
        rows = tuple(tuple(Cost(c) for c in row) for row in self.entries)
        if len(rows) != len(self.source):
            raise DimensionMismatch(
                f"{len(rows)} rows for source {self.source}")
        for row in rows:
            if len(row) != len(self.target):
                raise DimensionMismatch(
                    f"row of length {len(row)} for target {self.target}")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_function(cls, source: PointSet, target: PointSet,
                      fn: Callable[[Hashable, Hashable], CostLike]) -> "NumRel":
        return cls(source, target,
                   tuple(tuple(Cost(fn(x, y)) for y in target) for x in source))

    @classmethod
    def constant(cls, source: PointSet, target: PointSet, c: CostLike) -> "NumRel":
        c = Cost(c)
        return cls(source, target, tuple((c,) * len(target) for _ in source))

    def __call__(self, x, y) -> Cost:
        return self.entries[self.source.index(x)][self.target.index(y)]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.source), len(self.target)

    def __repr__(self):
        body = "; ".join(" ".join(str(c) for c in row) for row in self.entries)
        return f"NumRel({self.source.labels()} -> {self.target.labels()}: [{body}])"


def _check_middle(r: NumRel, s: NumRel):
    if r.target != s.source:
        raise DimensionMismatch(
            f"cannot compose: {r.target} is not {s.source}")


def compose(r: NumRel, s: NumRel) -> NumRel:
    """Min-plus product: first ``r: X -|-> Y``, then ``s: Y -|-> Z``."""
    _check_middle(r, s)
    cols = list(zip(*s.entries)) if s.entries else [() for _ in s.target]
    out = []
    for row in r.entries:
        out.append(tuple(
            inf_of(add(a, b) for a, b in zip(row, col)) for col in cols))
    return NumRel(r.source, s.target, tuple(out))


def converse(r: NumRel) -> NumRel:
    entries = tuple(zip(*r.entries)) if r.entries else tuple(() for _ in r.target)
    return NumRel(r.target, r.source, entries)


def scale_join(u: CostLike, r: NumRel) -> NumRel:
    """The action ``(u . r)(x, y) = max(u, r(x, y))``."""
    u = Cost(u)
    return NumRel(r.source, r.target,
                  tuple(tuple(join(u, c) for c in row) for row in r.entries))


MapLike = Union[Mapping, Callable, Sequence]


def as_callable(f: MapLike, source: PointSet) -> Callable:
    if callable(f):
        return f
    if isinstance(f, Mapping):
        return f.__getitem__
    seq = tuple(f)
    if len(seq) != len(source):
        raise DimensionMismatch("map given as a sequence must cover the source")
    return lambda x: seq[source.index(x)]


def from_map(f: MapLike, source: PointSet, target: PointSet) -> NumRel:
    """The graph of a map as a 0/inf matrix."""
    fn = as_callable(f, source)
    rows = []
    for x in source:
        try:
            fx = fn(x)
        except KeyError:
            raise KeyError(f"map undefined at {x!r}") from None
        j = target.index(fx)
        rows.append(tuple(ZERO if k == j else INF for k in range(len(target))))
    return NumRel(source, target, tuple(rows))


def identity(points: PointSet) -> NumRel:
    return from_map(lambda x: x, points, points)


def leq(r: NumRel, r2: NumRel) -> bool:
    """``r >= r2`` entrywise in the numeric order (see module docstring)."""
    if r.source != r2.source or r.target != r2.target:
        raise DimensionMismatch("relations live on different point sets")
    return all(a >= b for ra, rb in zip(r.entries, r2.entries)
               for a, b in zip(ra, rb))

