"""The ultrafilter monad on finite sets.

A finite set carries only principal ultrafilters, so a :class:`FinUltrafilter`
stores its generating point.  Every construction still has a *literal* twin
that works with families of subsets (membership, ``Uf`` by preimages, ``m``
through ``A#``, the sup-inf formulas for the extension and for xi).  The
literal twins enumerate subsets and are capped at :data:`LITERAL_CAP` points;
they exist to be cross-checked against the fast principal paths.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, FrozenSet, Hashable, Iterable, Iterator

from .numrel import MapLike, NumRel, PointSet, as_callable, label
from .quantale import Cost, inf_of, sup_of

__all__ = [
    "FinUltrafilter", "LITERAL_CAP",
    "enumerate_ultrafilters", "ultra_set", "unit", "mult", "sharp",
    "push_forward", "push_forward_literal", "mult_literal", "from_members",
    "extend", "extend_literal", "xi", "xi_literal", "value_carrier",
    "extU_pullback", "subsets",
]

LITERAL_CAP = 12


class LiteralTooLarge(ValueError):
    pass


def subsets(points: PointSet) -> Iterator[FrozenSet]:
    """All subsets, smallest first."""
    if len(points) > LITERAL_CAP:
        raise LiteralTooLarge(f"{len(points)} points exceed the cap of {LITERAL_CAP}")
    elems = points.elements
    for k in range(len(elems) + 1):
        for combo in combinations(elems, k):
            yield frozenset(combo)


@dataclass(frozen=True)
class FinUltrafilter:
    """The principal ultrafilter ``{A | point in A}`` on ``carrier``."""

    carrier: PointSet
    point: Hashable

    def __post_init__(self):
        if self.point not in self.carrier:
            raise KeyError(f"{self.point!r} is not a point of {self.carrier}")

    def contains(self, subset: Iterable) -> bool:
        return self.point in frozenset(subset)

    __contains__ = contains

    def members(self) -> Iterator[FrozenSet]:
        """Every member subset (literal mode)."""
        return (A for A in subsets(self.carrier) if self.point in A)

    def __str__(self):
        return f"principal({label(self.point)})"

    def __repr__(self):
        return f"FinUltrafilter({self.point!r})"


def enumerate_ultrafilters(points: PointSet) -> list[FinUltrafilter]:
    return [FinUltrafilter(points, x) for x in points]


def ultra_set(points: PointSet) -> PointSet:
    """The carrier ``UX``."""
    return PointSet(enumerate_ultrafilters(points))


def unit(x, points: PointSet) -> FinUltrafilter:
    return FinUltrafilter(points, x)


def push_forward(f: MapLike, u: FinUltrafilter, target: PointSet) -> FinUltrafilter:
    return FinUltrafilter(target, as_callable(f, u.carrier)(u.point))


def from_members(carrier: PointSet, family: Iterable[FrozenSet]) -> FinUltrafilter:
    """Recover the ultrafilter described by an explicit family of subsets.

    The family must be exactly the set of subsets containing one point.
    """
    fam = set(family)
    singletons = [x for x in carrier if frozenset([x]) in fam]
    if len(singletons) != 1:
        raise ValueError("family is not a principal ultrafilter on a finite set")
    u = FinUltrafilter(carrier, singletons[0])
    if fam != set(u.members()):
        raise ValueError("family is not an ultrafilter")
    return u


def push_forward_literal(f: MapLike, u: FinUltrafilter, target: PointSet) -> FinUltrafilter:
    """``Uf(u) = {B | f^-1(B) in u}``, by enumerating every B."""
    fn = as_callable(f, u.carrier)
    image = {x: fn(x) for x in u.carrier}
    family = []
    for B in subsets(target):
        preimage = frozenset(x for x, fx in image.items() if fx in B)
        if u.contains(preimage):
            family.append(B)
    return from_members(target, family)


def sharp(A: Iterable, points: PointSet) -> frozenset:
    """``A# = {a in UX | A in a}``."""
    A = frozenset(A)
    return frozenset(a for a in enumerate_ultrafilters(points) if a.contains(A))


def _base_of(big: FinUltrafilter) -> PointSet:
    inner = big.point
    if not isinstance(inner, FinUltrafilter):
        raise TypeError("expected an ultrafilter of ultrafilters")
    return inner.carrier


def mult(big: FinUltrafilter) -> FinUltrafilter:
    """``m_X: UUX -> UX``; principal at a principal ultrafilter collapses."""
    _base_of(big)
    return big.point


def mult_literal(big: FinUltrafilter) -> FinUltrafilter:
    """``m_X(big) = {A | A# in big}``."""
    points = _base_of(big)
    family = [A for A in subsets(points) if big.contains(sharp(A, points))]
    return from_members(points, family)


def _ultra_rel(r: NumRel, fn) -> NumRel:
    UX, UY = ultra_set(r.source), ultra_set(r.target)
    return NumRel(UX, UY, tuple(tuple(fn(a, b) for b in UY) for a in UX))


def extend(r: NumRel) -> NumRel:
    """The extension ``U r: UX -|-> UY``; principal reduction ``r(x, y)``."""
    return NumRel(ultra_set(r.source), ultra_set(r.target), r.entries)


def extend_literal(r: NumRel) -> NumRel:
    """``sup_{A in a, B in b} inf_{x in A, y in B} r(x, y)``."""

    def entry(a: FinUltrafilter, b: FinUltrafilter) -> Cost:
        bs = list(b.members())
        return sup_of(
            inf_of(r(x, y) for x in A for y in B)
            for A in a.members() for B in bs)

    return _ultra_rel(r, entry)


def value_carrier(values: Iterable[Cost]) -> PointSet:
    """A finite carrier of costs, sorted, duplicates removed."""
    return PointSet(sorted(set(Cost(v) for v in values)))


def xi(v: FinUltrafilter) -> Cost:
    return Cost(v.point)


def xi_literal(v: FinUltrafilter) -> Cost:
    """``sup_{A in v} inf A``."""
    return sup_of(inf_of(A) for A in v.members())


def extU_pullback(r: NumRel, x: FinUltrafilter, y: FinUltrafilter) -> Cost:
    """``inf { xi(U r (w)) | w in U(X x Y) with marginals x and y }``.

    Every ultrafilter ``w`` on ``X x Y`` is enumerated; ``U r (w)`` is formed by
    the preimage comprehension and ``xi`` by its sup-inf formula.
    """
    XY = r.source.product(r.target)
    values = value_carrier(c for row in r.entries for c in row)
    rmap: Callable = lambda p: r(p[0], p[1])
    candidates = []
    for w in enumerate_ultrafilters(XY):
        if push_forward(lambda p: p[0], w, r.source) != x:
            continue
        if push_forward(lambda p: p[1], w, r.target) != y:
            continue
        candidates.append(xi_literal(push_forward_literal(rmap, w, values)))
    return inf_of(candidates)
