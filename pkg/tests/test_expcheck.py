from fractions import Fraction

import numpy as np
import pytest

from approach_spaces.approach import ApproachSpace, discrete, from_preorder, one_point
from approach_spaces.expcheck import (check, check_exponentiable_exact,
                                      check_exponentiable_grid, classify_finite,
                                      criterion_sides, decide_pair, dense_grid,
                                      sample_violations, violations)
from approach_spaces.generate import random_space
from approach_spaces.quantale import INF, Cost

TWO = ApproachSpace.from_rows("pq", [[0, 1], [1, 0]])
LINE = ApproachSpace.from_rows(["0", "1/2", "1"],
                               [[0, "1/2", 1], ["1/2", 0, "1/2"], [1, "1/2", 0]])


def test_criterion_sides_on_the_line():
    lhs, rhs, y = criterion_sides(LINE, "0", "1", "1/4", "3/4")
    assert (lhs, rhs, y) == (Cost(1), Cost("5/4"), "1/2")


@pytest.mark.parametrize("method", ["exact", "grid", "classify"])
def test_passing_spaces(method):
    for S in [one_point(), discrete("abcd"), from_preorder("abcd", [("a", "b"), ("c", "b")])]:
        assert check(S, method)


@pytest.mark.parametrize("method", ["exact", "grid", "classify"])
def test_two_point_witness(method):
    w = check(TWO, method).witness
    assert (w.z, w.x0, w.u, w.v, w.lhs, w.rhs) == ("p", "q", Cost("1/2"), Cost("1/2"),
                                                   Cost(1), Cost("3/2"))


def test_grid_with_half_matches_exact():
    rep = check_exponentiable_grid(TWO, ["0", "1/4", "1/2", "3/4", "1", "2", "inf"])
    assert rep.witness == check_exponentiable_exact(TWO).witness


def test_line_pair_witness():
    res = decide_pair(LINE, "0", "1", maximise=True)
    w = res.witness
    assert (w.u, w.v, w.lhs, w.rhs) == (Cost("1/4"), Cost("3/4"), Cost(1), Cost("5/4"))
    assert res.max_violation == Fraction(1, 4)
    rep = check_exponentiable_exact(LINE)
    assert rep.stats["pair_witnesses"]["0->1"] == w
    first = rep.witness
    assert (first.z, first.x0, first.u, first.v) == ("0", "1/2", Cost("1/4"), Cost("1/4"))


def test_trivial_pairs():
    S = ApproachSpace.from_rows("ab", [[0, "inf"], [0, 0]])
    assert decide_pair(S, "a", "b").reason.startswith("a = inf")
    assert decide_pair(S, "b", "a").reason.startswith("a = 0")


def test_infinite_grid_never_refutes(rng):
    for _ in range(20):
        S = random_space(rng.randint(1, 4), rng=rng)
        assert check_exponentiable_grid(S, ["0", "inf"])


def test_dense_grid_contents():
    g = dense_grid(LINE)
    assert g[-1] == INF
    assert {Cost("1/4"), Cost("3/4"), Cost(2)} <= set(g)


def test_violation_encoding():
    viol, scale = violations(TWO, ["1/2", "inf", "0"], ["1/2", "1", "0"])
    assert scale == 2
    pq = viol[0, 1]
    assert pq[0] == 1  # 3/2 - 1 in halves
    assert pq[1] <= 0 and pq[2] <= 0


def test_sampling_never_beats_the_decider(rng):
    g = np.random.default_rng(7)
    for _ in range(20):
        S = random_space(rng.randint(2, 4), ["0", "1/3", "1/2", "1", "inf"], rng)
        _, _, viol, scale = sample_violations(S, 2000, g)
        for zi, z in enumerate(S.points):
            for xi, x0 in enumerate(S.points):
                worst = viol[zi, xi].max()
                if worst > 0:
                    res = decide_pair(S, z, x0, maximise=True)
                    assert not res.ok
                    assert Fraction(int(worst), scale) <= res.max_violation


def test_classifier_rule(rng):
    for _ in range(30):
        S = random_space(rng.randint(1, 5), rng=rng)
        rep = classify_finite(S)
        intermediate = any(c.is_finite and c.value > 0 for c in S.entries())
        assert rep.ok == (not intermediate)
        assert rep.ok == check_exponentiable_exact(S).ok


def test_large_denominators_fall_back_to_objects():
    S = ApproachSpace.from_rows("ab", [[0, Fraction(2 ** 45 + 1, 2 ** 45)], [1, 0]])
    assert not check_exponentiable_exact(S)


def test_unknown_method():
    with pytest.raises(ValueError):
        check(TWO, "guess")
