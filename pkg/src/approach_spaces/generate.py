"""Seeded random instances: spaces, contraction functions, costs."""
from __future__ import annotations

import random
from typing import Sequence

from .approach import ApproachSpace, metric_closure, square, triangle_check
from .quantale import INF, ZERO, Cost, CostLike, add, inf_of

DEFAULT_SEED = 20240601
DEFAULT_VALUES = ("0", "1/2", "1", "inf")


def _labels(n: int) -> list[str]:
    return [chr(ord("a") + i) if n <= 26 else f"x{i}" for i in range(n)]


def random_matrix(n: int, values: Sequence[CostLike], rng: random.Random,
                  zero_diagonal: bool = True):
    vals = [Cost(v) for v in values]
    rows = [[ZERO if (zero_diagonal and i == j) else rng.choice(vals) for j in range(n)]
            for i in range(n)]
    return square(_labels(n), rows)


def random_space(n: int, values: Sequence[CostLike] = DEFAULT_VALUES,
                 rng: random.Random | None = None, tries: int = 20) -> ApproachSpace:
    """A valid space: rejection-sample for the triangle inequality, and if no
    sample passes within ``tries`` close the last one by min-plus squaring."""
    rng = rng or random.Random(DEFAULT_SEED)
    m = None
    for _ in range(tries):
        m = random_matrix(n, values, rng)
        if triangle_check(m):
            return ApproachSpace(m)
    return ApproachSpace(metric_closure(m))


def random_contraction_values(space: ApproachSpace, rng: random.Random,
                              values: Sequence[CostLike] = ("0", "1/2", "1", "2", "inf")):
    """``x -> min_z c_z + dm(z, x)``, which is always a contraction."""
    vals = [Cost(v) for v in values]
    X = space.points
    offs = [rng.choice(vals) for _ in X]
    e = space.matrix.entries
    return tuple(inf_of(add(offs[z], e[z][x]) for z in range(len(X))) for x in range(len(X)))


def random_cost(rng: random.Random, den: int = 4, top: int = 12, p_inf: float = 0.1) -> Cost:
    if rng.random() < p_inf:
        return INF
    from fractions import Fraction
    return Cost(Fraction(rng.randint(0, top * den), den))
