"""Finite approach spaces given by their ultrafilter convergence.

On a finite set ``X`` the convergence ``a: UX -|-> X`` is determined by the
square matrix ``dm(z, x) = a(principal(z), x)``.  The two axioms

* reflexivity   ``0 >= a(principal(x), x)``
* transitivity  ``U a(XX, xx) + a(xx, x) >= a(m(XX), x)``

then say exactly that ``dm`` has a zero diagonal and satisfies the triangle
inequality, i.e. that it is a Lawvere generalized metric.  ``check_axioms``
evaluates both the matrix form and the ultrafilter form and refuses to answer
if they disagree.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .numrel import MapLike, NumRel, PointSet, as_callable, compose, from_map, label, leq
from .quantale import INF, ZERO, Cost, CostLike, add, inf_of, join, ominus, sup_of
from .reports import CheckReport, Witness
from . import ultra

__all__ = [
    "ApproachSpace", "InvalidSpace", "DistanceView",
    "check_axioms", "check_reflexive", "triangle_check", "ultrafilter_check",
    "dist_from_conv", "conv_from_dist", "check_delta_axioms",
    "is_contraction", "product", "halfline_b", "halfline_conv",
    "phi_uv", "check_halfline_contraction", "halfline", "one_point", "discrete",
    "from_preorder", "metric_closure", "label", "square", "convergence",
]


class InvalidSpace(ValueError):
    def __init__(self, report: CheckReport):
        self.report = report
        w = report.witness
        super().__init__(
            f"{w.check} fails at {w.at}: {w.lhs} >= {w.rhs} is false")


def _as_matrix(obj) -> NumRel:
    if isinstance(obj, ApproachSpace):
        return obj.matrix
    if isinstance(obj, NumRel):
        if obj.source != obj.target:
            raise ValueError("a convergence matrix must be square")
        return obj
    raise TypeError(f"expected a square NumRel, got {type(obj).__name__}")


def square(points: Sequence[Hashable], rows: Sequence[Sequence[CostLike]]) -> NumRel:
    ps = points if isinstance(points, PointSet) else PointSet(points)
    return NumRel(ps, ps, tuple(tuple(Cost(c) for c in row) for row in rows))


# -- the axioms ---------------------------------------------------------------

def check_reflexive(matrix) -> CheckReport:
    m = _as_matrix(matrix)
    for i, x in enumerate(m.source):
        if m.entries[i][i] != ZERO:
            return CheckReport(False, "reflexivity", Witness(
                "reflexivity", {"x": label(x)}, ZERO, m.entries[i][i]))
    return CheckReport(True, "reflexivity", stats={"points": len(m.source)})


def triangle_check(matrix) -> CheckReport:
    """Zero diagonal, then ``dm(z,y) + dm(y,x) >= dm(z,x)`` in (z, y, x) order."""
    m = _as_matrix(matrix)
    rep = check_reflexive(m)
    if not rep:
        return rep
    e = m.entries
    pts = m.source.elements
    n = len(pts)
    for zi in range(n):
        for yi in range(n):
            zy = e[zi][yi]
            if zy.is_inf:
                continue
            for xi in range(n):
                rhs = e[zi][xi]
                lhs = add(zy, e[yi][xi])
                if lhs < rhs:
                    return CheckReport(False, "transitivity", Witness(
                        "transitivity",
                        {"z": label(pts[zi]), "y": label(pts[yi]), "x": label(pts[xi])},
                        lhs, rhs))
    return CheckReport(True, "axioms", stats={"triples": n ** 3})


def convergence(matrix) -> NumRel:
    """``a: UX -|-> X`` with rows indexed by the principal ultrafilters."""
    m = _as_matrix(matrix)
    return NumRel(ultra.ultra_set(m.source), m.target, m.entries)


def ultrafilter_check(matrix, literal: bool = False) -> CheckReport:
    """The axioms read off the ultrafilter monad, by full enumeration.

    ``literal=True`` evaluates ``U a`` by its sup-inf formula and ``m`` by the
    ``A#`` comprehension instead of the principal shortcuts.
    """
    m = _as_matrix(matrix)
    X = m.source
    a = convergence(m)
    UX = a.source
    ext = ultra.extend_literal(a) if literal else ultra.extend(a)
    mult = ultra.mult_literal if literal else ultra.mult
    for x in X:
        lhs, rhs = ZERO, a(ultra.unit(x, X), x)
        if not lhs >= rhs:
            return CheckReport(False, "reflexivity", Witness(
                "reflexivity", {"x": label(x)}, lhs, rhs))
    count = 0
    for XX in ultra.enumerate_ultrafilters(UX):
        limit = mult(XX)
        for xx in UX:
            step = ext(XX, xx)
            for x in X:
                count += 1
                lhs = add(step, a(xx, x))
                rhs = a(limit, x)
                if lhs < rhs:
                    return CheckReport(False, "transitivity", Witness(
                        "transitivity",
                        {"z": label(XX.point.point), "y": label(xx.point), "x": label(x)},
                        lhs, rhs))
    return CheckReport(True, "axioms", stats={"triples": count})


def check_axioms(matrix, literal: bool = False) -> CheckReport:
    """Validate a convergence matrix by both checkers; they must agree."""
    tri = triangle_check(matrix)
    enum = ultrafilter_check(matrix, literal=literal)
    if tri.ok != enum.ok or tri.witness != enum.witness:
        raise AssertionError(f"axiom checkers disagree: {tri} vs {enum}")
    tri.stats = {"checkers": ["triangle", "ultrafilter"], **tri.stats}
    return tri


# -- spaces -------------------------------------------------------------------

@dataclass(frozen=True)
class ApproachSpace:
    """A finite approach space (or pseudo-approach space if ``pseudo``)."""

    matrix: NumRel
    pseudo: bool = False

    def __post_init__(self):
        rep = check_reflexive(self.matrix) if self.pseudo else check_axioms(self.matrix)
        if not rep:
            raise InvalidSpace(rep)

    @classmethod
    def from_rows(cls, points: Sequence[Hashable], rows, pseudo: bool = False):
        return cls(square(points, rows), pseudo=pseudo)

    @property
    def points(self) -> PointSet:
        return self.matrix.source

    def __len__(self):
        return len(self.matrix.source)

    def dm(self, z, x) -> Cost:
        return self.matrix(z, x)

    def conv(self, uf: ultra.FinUltrafilter, x) -> Cost:
        """``a(uf, x)``."""
        return self.matrix(uf.point, x)

    def convergence(self) -> NumRel:
        return convergence(self.matrix)

    def entries(self) -> list[Cost]:
        return [c for row in self.matrix.entries for c in row]

    def __repr__(self):
        kind = "PseudoApproachSpace" if self.pseudo else "ApproachSpace"
        return f"{kind}({self.matrix!r})"


def one_point(name: str = "*") -> ApproachSpace:
    return ApproachSpace.from_rows([name], [[0]])


def discrete(points: Sequence[Hashable]) -> ApproachSpace:
    n = len(points)
    return ApproachSpace.from_rows(
        points, [[ZERO if i == j else INF for j in range(n)] for i in range(n)])


def from_preorder(points: Sequence[Hashable], pairs: Iterable[tuple]) -> ApproachSpace:
    """The topological space of a finite preorder, as a 0/inf matrix.

    ``dm(z, x) = 0`` iff ``(z, x)`` lies in the reflexive transitive closure
    of ``pairs``.
    """
    ps = PointSet(points)
    n = len(ps)
    reach = [[i == j for j in range(n)] for i in range(n)]
    for z, x in pairs:
        reach[ps.index(z)][ps.index(x)] = True
    for k in range(n):
        for i in range(n):
            if reach[i][k]:
                for j in range(n):
                    if reach[k][j]:
                        reach[i][j] = True
    return ApproachSpace.from_rows(
        ps, [[ZERO if reach[i][j] else INF for j in range(n)] for i in range(n)])


def metric_closure(matrix: NumRel) -> NumRel:
    """Zero the diagonal, then min-plus square until nothing changes."""
    m = _as_matrix(matrix)
    cur = NumRel(m.source, m.target, tuple(
        tuple(ZERO if i == j else c for j, c in enumerate(row))
        for i, row in enumerate(m.entries)))
    while True:
        nxt = compose(cur, cur)
        if nxt == cur:
            return cur
        cur = nxt


# -- the distance view ----------------------------------------------------------

class DistanceView:
    """A point-set distance ``delta(A, x)`` on a finite carrier."""

    def __init__(self, points: PointSet, fn: Callable[[frozenset, Hashable], Cost]):
        self.points = points
        self._fn = fn

    def __call__(self, A: Iterable, x) -> Cost:
        return Cost(self._fn(frozenset(A), x))

    @classmethod
    def from_space(cls, space) -> "DistanceView":
        m = _as_matrix(space)
        return cls(m.source, lambda A, x: dist_from_conv(m, A, x))

    def table(self) -> dict:
        return {(A, x): self(A, x) for A in ultra.subsets(self.points) for x in self.points}


def dist_from_conv(space, A: Iterable, x) -> Cost:
    """``delta(A, x) = inf { a(u, x) | A in u }``."""
    m = _as_matrix(space)
    A = frozenset(A)
    a = convergence(m)
    return inf_of(a(u, x) for u in ultra.enumerate_ultrafilters(m.source) if u.contains(A))


def conv_from_dist(D: DistanceView) -> NumRel:
    """``a(u, x) = sup { delta(A, x) | A in u }`` at each principal ``u``."""
    X = D.points
    return NumRel.from_function(
        X, X, lambda z, x: sup_of(D(A, x) for A in ultra.unit(z, X).members()))


def _eps_grid(values: Iterable[Cost]) -> list[Cost]:
    vals = set(values) | {ZERO, INF}
    finite = [v for v in vals if v.is_finite]
    vals |= {Cost(abs(p.value - q.value)) for p in finite for q in finite}
    return sorted(vals)


def check_delta_axioms(D: DistanceView) -> CheckReport:
    """The four distance axioms, exhaustively over subsets and an eps grid.

    ``delta(A^(eps), x) + eps`` only changes its minimiser at eps equal to a
    value of ``delta``, so the grid of values, their differences, 0 and inf
    decides the tower axiom.
    """
    X = D.points
    subs = list(ultra.subsets(X))
    table = {(A, x): D(A, x) for A in subs for x in X}

    def fail(axiom, at, lhs, rhs):
        at = {k: (sorted(label(p) for p in v) if isinstance(v, frozenset) else
                  str(v) if isinstance(v, Cost) else label(v)) for k, v in at.items()}
        return CheckReport(False, axiom, Witness(axiom, at, lhs, rhs))

    for x in X:
        v = table[(frozenset([x]), x)]
        if v != ZERO:
            return fail("point", {"x": x}, ZERO, v)
    for x in X:
        v = table[(frozenset(), x)]
        if v != INF:
            return fail("empty", {"x": x}, v, INF)
    for A in subs:
        for B in subs:
            for x in X:
                lhs, rhs = table[(A | B, x)], min(table[(A, x)], table[(B, x)])
                if lhs != rhs:
                    return fail("union", {"A": A, "B": B, "x": x}, lhs, rhs)
    grid = _eps_grid(table.values())
    for eps in grid:
        for A in subs:
            hull = frozenset(y for y in X if eps >= table[(A, y)])
            for x in X:
                lhs, rhs = add(table[(hull, x)], eps), table[(A, x)]
                if lhs < rhs:
                    return fail("tower", {"A": A, "eps": eps, "x": x}, lhs, rhs)
    return CheckReport(True, "distance axioms",
                       stats={"subsets": len(subs), "eps_grid": len(grid)})


# -- contractions ----------------------------------------------------------------

def _checked_map(f: MapLike, S, T) -> Callable:
    fn = as_callable(f, S.points)
    for x in S.points:
        try:
            fx = fn(x)
        except KeyError:
            raise KeyError(f"map undefined at {x!r}") from None
        if fx not in T.points:
            raise KeyError(f"{fx!r} is not a point of the codomain")
    return fn


def is_contraction(f: MapLike, S: ApproachSpace, T: ApproachSpace,
                   distance_form: bool | None = None) -> CheckReport:
    """``a(u, x) >= b(Uf(u), f(x))``, cross-checked against the distance form
    ``delta(A, x) >= delta'(f(A), f(x))`` when the domain is small enough."""
    fn = _checked_map(f, S, T)
    X, Y = S.points, T.points
    if distance_form is None:
        distance_form = len(X) <= ultra.LITERAL_CAP
    conv_report = None
    for u in ultra.enumerate_ultrafilters(X):
        fu = ultra.push_forward(fn, u, Y)
        for x in X:
            lhs, rhs = S.conv(u, x), T.conv(fu, fn(x))
            if lhs < rhs:
                conv_report = CheckReport(False, "contraction", Witness(
                    "contraction", {"from": label(u.point), "to": label(x)}, lhs, rhs))
                break
        if conv_report:
            break
    if conv_report is None:
        conv_report = CheckReport(True, "contraction", stats={"form": "convergence"})
    if not distance_form:
        return conv_report
    dS, dT = DistanceView.from_space(S), DistanceView.from_space(T)
    dist_ok = all(dS(A, x) >= dT({fn(p) for p in A}, fn(x))
                  for A in ultra.subsets(X) for x in X)
    if dist_ok != conv_report.ok:
        raise AssertionError("contraction forms disagree")
    conv_report.stats = {"forms": ["convergence", "distance"]}
    return conv_report


def product(S: ApproachSpace, T: ApproachSpace) -> ApproachSpace:
    """Carrier ``X x Y``, convergence ``a(pi1 w, x) v b(pi2 w, y)``."""
    P = S.points.product(T.points)
    m = NumRel.from_function(
        P, P, lambda p, q: join(S.dm(p[0], q[0]), T.dm(p[1], q[1])))
    return ApproachSpace(m, pseudo=S.pseudo or T.pseudo)


# -- the half-line ---------------------------------------------------------------

def halfline_b(v0: CostLike, v: CostLike) -> Cost:
    """Convergence of ``[0, inf]`` at the principal ultrafilter of ``v0``."""
    return ominus(Cost(v), Cost(v0))


def halfline(values: Iterable[CostLike]) -> ApproachSpace:
    """The finite subspace of ``[0, inf]`` on the given values.

    Points are the :class:`Cost` values themselves; ``dm(v0, v) = v - v0``.
    """
    ps = ultra.value_carrier(values)
    return ApproachSpace(NumRel.from_function(ps, ps, halfline_b))


def halfline_conv(vv: ultra.FinUltrafilter, v: CostLike) -> Cost:
    """``v - xi(vv)`` with xi evaluated literally."""
    return ominus(Cost(v), ultra.xi_literal(vv))


def check_halfline_contraction(space: ApproachSpace, values: Sequence[CostLike] | Mapping) -> CheckReport:
    """Is ``phi: X -> [0, inf]`` a contraction?

    Evaluated twice: pointwise ``dm(x0, x) >= phi(x) - phi(x0)``, and as the
    relation inequality ``a . U(phi) . e_1 >= phi`` with ``phi: 1 -|-> X``.
    """
    X = space.points
    if isinstance(values, Mapping):
        vals = tuple(Cost(values[x]) for x in X)
    else:
        vals = tuple(Cost(v) for v in values)
    point = PointSet(["*"])
    phi = NumRel(point, X, (vals,))
    e1 = from_map(lambda _: ultra.unit("*", point), point, ultra.ultra_set(point))
    composite = compose(compose(e1, ultra.extend(phi)), space.convergence())
    rel_ok = leq(composite, phi)

    witness = None
    for i, x0 in enumerate(X):
        for j, x in enumerate(X):
            lhs, rhs = space.matrix.entries[i][j], ominus(vals[j], vals[i])
            if lhs < rhs:
                witness = Witness("halfline contraction",
                                  {"x0": label(x0), "x": label(x)}, lhs, rhs)
                break
        if witness:
            break
    if rel_ok != (witness is None):
        raise AssertionError("pointwise and relational contraction checks disagree")
    return CheckReport(witness is None, "halfline contraction", witness,
                       stats={"forms": ["pointwise", "a.U(phi).e1 >= phi"]})


def phi_uv(space: ApproachSpace, z, u: CostLike, v: CostLike) -> tuple[Cost, ...]:
    """``x -> min_y (u v dm(y, x)) + (v v dm(z, y))``, indexed like the points."""
    u, v = Cost(u), Cost(v)
    X = space.points
    zi = X.index(z)
    e = space.matrix.entries
    n = len(X)
    return tuple(
        inf_of(add(join(u, e[y][x]), join(v, e[zi][y])) for y in range(n))
        for x in range(n))
