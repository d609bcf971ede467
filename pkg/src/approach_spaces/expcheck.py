"""Deciding the exponentiability criterion on a finite approach space.

For a pair of points (z, x0) write ``a = dm(z, x0)``, ``A_y = dm(y, x0)`` and
``B_y = dm(z, y)``.  The criterion asks, for all ``u, v`` in [0, inf],

    (u + v) v a  >=  min_y (u v A_y) + (v v B_y)                         (*)

Facts used by the exact decider:

* ``u`` or ``v`` infinite makes the left side infinite; (*) holds.
* The term ``y = x0`` equals ``u + (v v a)``, which is at most the left side
  once ``v >= a``; the term ``y = z`` does the same once ``u >= a``.  So (*)
  can only fail inside the box ``0 <= u, v < a`` (never when ``a`` is 0 or inf).
* Inside the box, terms with an infinite ``A_y`` or ``B_y`` are infinite and
  never attain the minimum.  The rest are piecewise affine; every place where
  two pieces of the two sides can trade places lies on a line
  ``u = c``, ``v = c``, ``u + v = c`` or ``u - v = c`` with ``c`` from the
  finite list built in :func:`_lines`.  On each cell of that arrangement
  ``rhs - lhs`` is affine, so it is positive somewhere in the box iff it is
  positive at a vertex of the arrangement.

Vertices are computed in integers after scaling by twice the common
denominator, which keeps every vertex integral.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .approach import ApproachSpace, label
from .quantale import INF, ZERO, Cost, CostLike, add, join
from .reports import CheckReport

__all__ = [
    "CriterionWitness", "PairResult", "criterion_sides",
    "decide_pair", "check_exponentiable_exact", "check_exponentiable_grid",
    "dense_grid", "classify_finite", "violations", "violations_scaled",
    "sample_violations", "check",
]


@dataclass(frozen=True)
class CriterionWitness:
    """An instance where ``rhs > lhs`` exactly."""

    z: str
    x0: str
    u: Cost
    v: Cost
    lhs: Cost
    rhs: Cost
    argmin_y: str

    def __post_init__(self):
        if not self.rhs > self.lhs:
            raise ValueError("a criterion witness needs rhs > lhs")

    def to_dict(self):
        return {"z": self.z, "x0": self.x0, "u": str(self.u), "v": str(self.v),
                "lhs": str(self.lhs), "rhs": str(self.rhs), "argmin_y": self.argmin_y}


def criterion_sides(space: ApproachSpace, z, x0, u: CostLike, v: CostLike):
    """``(lhs, rhs, argmin_y)`` of the criterion at one instance, in exact Costs."""
    u, v = Cost(u), Cost(v)
    X = space.points
    zi, xi = X.index(z), X.index(x0)
    e = space.matrix.entries
    lhs = join(add(u, v), e[zi][xi])
    best, arg = INF, X[0]
    for yi, y in enumerate(X):
        t = add(join(u, e[yi][xi]), join(v, e[zi][yi]))
        if t < best:
            best, arg = t, y
    return lhs, best, arg


def _witness(space, z, x0, u, v) -> CriterionWitness:
    lhs, rhs, y = criterion_sides(space, z, x0, u, v)
    return CriterionWitness(label(z), label(x0), Cost(u), Cost(v), lhs, rhs, label(y))


# -- exact vertex decider -------------------------------------------------------

@dataclass
class PairResult:
    z: str
    x0: str
    ok: bool
    reason: str
    vertices: int = 0
    witness: CriterionWitness | None = None
    max_violation: Fraction | None = None
    argmax: tuple | None = None


def _lcm_den(values: Iterable[Fraction]) -> int:
    d = 1
    for q in values:
        d = d * q.denominator // math.gcd(d, q.denominator)
    return d


def _lines(a: int, A: Sequence[int], B: Sequence[int]):
    """Constants of the four line families, restricted to the box ``[0, a]^2``."""
    us = {0, a, *A, *(a - b for b in B)}
    vs = {0, a, *B, *(a - p for p in A)}
    for p, q in zip(A, B):
        us.update(p + q - b for b in B)
        vs.update(p + q - r for r in A)
    sums = {a, *(p + q for p, q in zip(A, B))}
    diffs = {p - b for p in A for b in B}
    return (sorted(c for c in us if 0 <= c <= a),
            sorted(c for c in vs if 0 <= c <= a),
            sorted(c for c in sums if 0 <= c <= 2 * a),
            sorted(c for c in diffs if -a <= c <= a))


def _vertices(a: int, A, B) -> np.ndarray:
    us, vs, sums, diffs = _lines(a, A, B)
    pts = {(p, q) for p in us for q in vs}
    pts.update((c, s - c) for c in us for s in sums)
    pts.update((c, c - d) for c in us for d in diffs)
    pts.update((s - c, c) for c in vs for s in sums)
    pts.update((d + c, c) for c in vs for d in diffs)
    pts.update(((s + d) // 2, (s - d) // 2) for s in sums for d in diffs)
    arr = np.array(sorted(p for p in pts if 0 <= p[0] <= a and 0 <= p[1] <= a),
                   dtype=np.int64).reshape(-1, 2)
    return arr


def decide_pair(space: ApproachSpace, z, x0, maximise: bool = False) -> PairResult:
    """Decide the criterion for one pair; ``maximise`` also scans every vertex
    for the largest violation ``rhs - lhs`` (returned unscaled)."""
    X = space.points
    e = space.matrix.entries
    zi, xi = X.index(z), X.index(x0)
    a = e[zi][xi]
    zl, xl = label(z), label(x0)
    if a.is_inf:
        return PairResult(zl, xl, True, "a = inf: left side infinite")
    if a == ZERO:
        return PairResult(zl, xl, True, "a = 0: the y = x0 term equals u + v")
    ys = [y for y in range(len(X)) if e[y][xi].is_finite and e[zi][y].is_finite]
    scale = 2 * _lcm_den([a.value] + [e[y][xi].value for y in ys] + [e[zi][y].value for y in ys])
    ai = int(a.value * scale)
    A = [int(e[y][xi].value * scale) for y in ys]
    B = [int(e[zi][y].value * scale) for y in ys]
    verts = _vertices(ai, A, B)
    if max(ai, 1) > 2 ** 40:
        verts = verts.astype(object)
    u, v = verts[:, 0], verts[:, 1]
    Aa, Ba = np.array(A, dtype=verts.dtype), np.array(B, dtype=verts.dtype)
    rhs = (np.maximum(u[:, None], Aa[None, :]) + np.maximum(v[:, None], Ba[None, :])).min(axis=1)
    lhs = np.maximum(u + v, ai)
    viol = rhs - lhs
    res = PairResult(zl, xl, True, "no vertex violates", vertices=len(verts))
    j = int(np.argmax(viol))  # vertices are sorted, so this is the lex-least maximiser
    if viol[j] > 0:
        res.ok = False
        res.reason = "vertex violation"
        res.witness = _witness(space, z, x0, Fraction(int(u[j]), scale), Fraction(int(v[j]), scale))
    if maximise:
        res.max_violation = Fraction(int(viol[j]), scale)
        res.argmax = (Fraction(int(u[j]), scale), Fraction(int(v[j]), scale))
    return res


def check_exponentiable_exact(space: ApproachSpace) -> CheckReport:
    """Decide the criterion for every pair.

    The witness sits at the first failing pair in point order, at the
    lexicographically least ``(u, v)`` maximising ``rhs - lhs`` there.  That
    point is a vertex, so the choice does not depend on the candidate set.
    """
    X = space.points
    results = [decide_pair(space, z, x0) for z in X for x0 in X]
    failing = [r for r in results if not r.ok]
    stats = {
        "pairs": len(results),
        "vertices": sum(r.vertices for r in results),
        "failing_pairs": [[r.z, r.x0] for r in failing],
        "pair_witnesses": {f"{r.z}->{r.x0}": r.witness for r in failing},
    }
    return CheckReport(not failing, "exponentiable (exact)",
                       failing[0].witness if failing else None, stats)


# -- grid oracle ------------------------------------------------------------------

def _scaled_matrix(space: ApproachSpace, extra=()):
    ents = space.entries()
    finite = [c.value for c in ents if c.is_finite] + list(extra)
    scale = _lcm_den(finite)
    top = max([int(q * scale) for q in finite] + [0])
    return ents, scale, top


def violations_scaled(space: ApproachSpace, U: np.ndarray, V: np.ndarray, scale: int,
                      big: int) -> np.ndarray:
    """``rhs - lhs`` on integer samples already multiplied by ``scale``.

    ``big`` encodes inf and must exceed twice every finite value involved;
    sums are clipped at ``big`` so inf + anything stays inf.
    """
    ents = space.entries()
    n = len(space)
    vals = []
    for c in ents:
        if c.is_inf:
            vals.append(big)
        else:
            q = c.value * scale
            if q.denominator != 1:
                raise ValueError("scale does not clear the entry denominators")
            vals.append(int(q))
    M = np.array(vals, dtype=np.int64).reshape(n, n)
    out = np.empty((n, n, len(U)), dtype=np.int64)
    UV = np.minimum(U + V, big)
    for zi in range(n):
        for xi in range(n):
            lhs = np.maximum(UV, M[zi, xi])
            terms = np.minimum(np.maximum(U[:, None], M[None, :, xi])
                               + np.maximum(V[:, None], M[zi, None, :]), big)
            out[zi, xi] = terms.min(axis=1) - lhs
    return out


def violations(space: ApproachSpace, us: Sequence[CostLike], vs: Sequence[CostLike]):
    """``rhs - lhs`` for every pair and every sample ``(us[k], vs[k])``.

    Returns ``(array[n, n, K], scale)``; divide by ``scale`` for exact values.
    """
    us = [Cost(c) for c in us]
    vs = [Cost(c) for c in vs]
    _, scale, top = _scaled_matrix(space, [c.value for c in us + vs if c.is_finite])
    big = 4 * top + 4

    def enc(cs):
        return np.array([big if c.is_inf else int(c.value * scale) for c in cs], dtype=np.int64)

    return violations_scaled(space, enc(us), enc(vs), scale, big), scale


def sample_violations(space: ApproachSpace, k: int, rng: np.random.Generator,
                      den: int = 64, p_inf: float = 0.02):
    """``k`` random ``(u, v)`` on a fine rational lattice up to (max entry) + 1,
    with a few infinite coordinates.  Returns ``(U, V, viol, scale)``."""
    _, scale, top = _scaled_matrix(space)
    scale *= den
    top *= den
    hi = top + scale
    big = 4 * hi + 4
    U = rng.integers(0, hi + 1, size=k, dtype=np.int64)
    V = rng.integers(0, hi + 1, size=k, dtype=np.int64)
    U[rng.random(k) < p_inf] = big
    V[rng.random(k) < p_inf] = big
    return U, V, violations_scaled(space, U, V, scale, big), scale


def dense_grid(space: ApproachSpace) -> list[Cost]:
    """Entries, pairwise differences and half-sums, 0, (max finite) + 1, inf."""
    fin = sorted({c.value for c in space.entries() if c.is_finite})
    vals = set(fin) | {Fraction(0)}
    vals.update(abs(p - q) for p in fin for q in fin)
    vals.update((p + q) / 2 for p in fin for q in fin)
    vals.add((max(fin) if fin else Fraction(0)) + 1)
    return [Cost(q) for q in sorted(vals)] + [INF]


def check_exponentiable_grid(space: ApproachSpace, grid: Sequence[CostLike] | None = None) -> CheckReport:
    """Evaluate the criterion on ``grid x grid`` only.  Sound for refutation.

    Same witness rule as the exact decider, restricted to the grid.
    """
    grid = sorted({Cost(c) for c in grid}) if grid is not None else dense_grid(space)
    us = [g for g in grid for _ in grid]
    vs = [h for _ in grid for h in grid]
    viol, _ = violations(space, us, vs)
    X = space.points
    stats = {"grid": [str(g) for g in grid], "points": len(us) * len(X) ** 2}
    for zi, z in enumerate(X):
        for xi, x0 in enumerate(X):
            k = int(np.argmax(viol[zi, xi]))
            if viol[zi, xi, k] > 0:
                return CheckReport(False, "exponentiable (grid)",
                                   _witness(space, z, x0, us[k], vs[k]), stats)
    return CheckReport(True, "exponentiable (grid)", stats=stats)


# -- classifier ---------------------------------------------------------------------

def classify_finite(space: ApproachSpace) -> CheckReport:
    """Pass iff every entry is 0 or inf.

    Otherwise let ``e`` be the least entry strictly between 0 and inf, at
    ``dm(z, x0)``.  With ``u = v = e/2`` the left side is ``e``.  Each
    ``A_y, B_y`` is 0 or at least ``e`` and the triangle inequality forbids
    both being 0, so every right-hand term is at least ``e + e/2``.
    """
    X = space.points
    e = space.matrix.entries
    best = None
    for zi, z in enumerate(X):
        for xi, x0 in enumerate(X):
            c = e[zi][xi]
            if c.is_finite and c > ZERO and (best is None or c < best[0]):
                best = (c, z, x0)
    if best is None:
        return CheckReport(True, "exponentiable (classify)", stats={"rule": "entries in {0, inf}"})
    half = Cost(best[0].value / 2)
    return CheckReport(False, "exponentiable (classify)",
                       _witness(space, best[1], best[2], half, half),
                       stats={"rule": "least intermediate entry, u = v = e/2"})


def check(space: ApproachSpace, method: str = "exact", grid=None) -> CheckReport:
    if method == "exact":
        return check_exponentiable_exact(space)
    if method == "grid":
        return check_exponentiable_grid(space, grid)
    if method == "classify":
        return classify_finite(space)
    raise ValueError(f"unknown method {method!r}")
