"""Random instances shared by the test modules."""
import random
from fractions import Fraction

from approach_spaces.numrel import NumRel, PointSet
from approach_spaces.quantale import INF, Cost

VALUES = [Cost(v) for v in ("0", "1/3", "1/2", "1", "3/2", "2", "inf")]


def points(n, prefix="x"):
    return PointSet([f"{prefix}{i}" for i in range(n)])


def rand_cost(rng: random.Random, p_inf=0.1):
    if rng.random() < p_inf:
        return INF
    return Cost(Fraction(rng.randint(0, 24), rng.choice([1, 2, 3, 4])))


def rand_rel(rng, X, Y, values=None):
    pick = (lambda: rng.choice(values)) if values else (lambda: rand_cost(rng))
    return NumRel(X, Y, tuple(tuple(pick() for _ in Y) for _ in X))


def rand_map(rng, X, Y):
    return {x: rng.choice(list(Y)) for x in X}
