import pytest

from approach_spaces import ultra
from approach_spaces.approach import (ApproachSpace, DistanceView, InvalidSpace, check_axioms,
                                      check_delta_axioms, check_halfline_contraction,
                                      conv_from_dist, discrete, dist_from_conv, from_preorder,
                                      halfline, halfline_b, is_contraction, metric_closure,
                                      one_point, phi_uv, product, square, triangle_check,
                                      ultrafilter_check)
from approach_spaces.generate import random_contraction_values, random_space
from approach_spaces.quantale import INF, ZERO, Cost

TWO = ApproachSpace.from_rows(["p", "q"], [[0, 1], [1, 0]])
LINE = ApproachSpace.from_rows(["0", "1/2", "1"],
                               [[0, "1/2", 1], ["1/2", 0, "1/2"], [1, "1/2", 0]])


def test_axiom_examples():
    assert check_axioms(discrete("abc"))
    rep = check_axioms(square("ab", [[1, 0], [0, 0]]))
    assert not rep and rep.witness.check == "reflexivity" and rep.witness.at == {"x": "a"}
    rep = check_axioms(square("abc", [[0, 1, 5], [1, 0, 1], [5, 1, 0]]))
    assert rep.witness.at == {"z": "a", "y": "b", "x": "c"}
    assert (rep.witness.lhs, rep.witness.rhs) == (Cost(2), Cost(5))


def test_invalid_space_raises_with_witness():
    with pytest.raises(InvalidSpace) as info:
        ApproachSpace(square("abc", [[0, 1, 5], [1, 0, 1], [5, 1, 0]]))
    assert info.value.report.witness.check == "transitivity"
    pseudo = ApproachSpace(square("abc", [[0, 1, 5], [1, 0, 1], [5, 1, 0]]), pseudo=True)
    assert pseudo.pseudo


def test_checkers_agree_literally(rng):
    for _ in range(40):
        n = rng.randint(1, 3)
        m = square(range(n), [[rng.choice([0, "1/2", 1, 2, "inf"]) for _ in range(n)]
                              for _ in range(n)])
        fast, lit = triangle_check(m), ultrafilter_check(m, literal=True)
        assert fast.ok == lit.ok
        assert fast.witness == lit.witness
        assert check_axioms(m, literal=True).ok == fast.ok


def test_constructors_are_valid():
    assert len(one_point()) == 1
    P = from_preorder("abcd", [("a", "b"), ("b", "c")])
    assert P.dm("a", "c") == ZERO and P.dm("c", "a") == INF
    closed = metric_closure(square("abc", [[5, 1, 9], [9, 0, 1], [1, 9, 3]]))
    assert triangle_check(closed)
    assert closed.entries[0] == (ZERO, Cost(1), Cost(2))


def test_distance_examples():
    assert dist_from_conv(TWO, [], "p") == INF
    assert dist_from_conv(TWO, ["p"], "p") == ZERO
    assert dist_from_conv(TWO, ["p", "q"], "q") == ZERO
    assert dist_from_conv(TWO, ["p"], "q") == Cost(1)


def test_distance_round_trip(rng):
    for _ in range(20):
        S = random_space(rng.randint(1, 4), ["0", "1/2", "1", "inf"], rng)
        D = DistanceView.from_space(S)
        assert conv_from_dist(D) == S.matrix
        assert check_delta_axioms(D)


def test_tower_fails_without_transitivity():
    S = ApproachSpace(square("abc", [[0, 1, 5], [1, 0, 1], [5, 1, 0]]), pseudo=True)
    rep = check_delta_axioms(DistanceView.from_space(S))
    assert not rep and rep.witness.check == "tower"


def test_tower_on_the_line_at_one():
    D = DistanceView.from_space(LINE)
    A = frozenset(["0"])
    hull = frozenset(y for y in LINE.points if Cost(1) >= D(A, y))
    assert hull == frozenset(LINE.points)
    for x in LINE.points:
        assert D(hull, x) + Cost(1) >= D(A, x)


def test_contraction_examples():
    assert is_contraction(lambda x: x, LINE, LINE)
    assert is_contraction(lambda x: "*", LINE, one_point())
    far = ApproachSpace.from_rows("pq", [[0, "inf"], ["inf", 0]])
    near = ApproachSpace.from_rows("pq", [[0, 0], [0, 0]])
    assert is_contraction(lambda x: x, far, near)
    rep = is_contraction(lambda x: x, near, TWO)
    assert not rep and (rep.witness.lhs, rep.witness.rhs) == (ZERO, Cost(1))


def test_product():
    P = product(LINE, one_point())
    assert [P.dm((a, "*"), (b, "*")) for a in LINE.points for b in LINE.points] == \
        [LINE.dm(a, b) for a in LINE.points for b in LINE.points]
    far = ApproachSpace.from_rows("ab", [[0, "inf"], ["inf", 0]])
    assert product(TWO, far).dm(("p", "a"), ("q", "b")) == INF


def test_pairing_into_product(rng):
    for _ in range(10):
        Z = random_space(3, ["0", "1", "inf"], rng)
        S, T = random_space(2, ["0", "1/2", "inf"], rng), random_space(2, ["0", "2"], rng)
        f = {z: rng.choice(list(S.points)) for z in Z.points}
        g = {z: rng.choice(list(T.points)) for z in Z.points}
        if is_contraction(f, Z, S) and is_contraction(g, Z, T):
            assert is_contraction(lambda z: (f[z], g[z]), Z, product(S, T))


def test_halfline():
    assert halfline_b(4, 4) == ZERO
    assert halfline_b(3, 5) == Cost(2)
    assert halfline_b(INF, 5) == ZERO
    H = halfline(["0", "1", "inf"])
    assert check_axioms(H)


def test_phi_examples():
    assert phi_uv(one_point(), "*", "1/3", 2) == (Cost("7/3"),)
    assert phi_uv(TWO, "p", "1/2", "1/2") == (Cost(1), Cost("3/2"))
    for z in LINE.points:
        row = LINE.matrix.entries[LINE.points.index(z)]
        assert phi_uv(LINE, z, 0, 0) == row


def test_random_contractions_are_certified(rng):
    for _ in range(20):
        S = random_space(rng.randint(1, 4), rng=rng)
        assert check_halfline_contraction(S, random_contraction_values(S, rng))


def test_convergence_is_a_contraction_from_discrete_ultrafilters(rng):
    for _ in range(10):
        S = random_space(rng.randint(1, 3), ["0", "1/2", "1", "inf"], rng)
        UX = ultra.ultra_set(S.points)
        dom = product(discrete(list(UX)), S)
        H = halfline(S.entries())
        assert is_contraction(lambda w: S.conv(w[0], w[1]), dom, H)


def test_convergence_with_extended_structure_can_fail():
    S = ApproachSpace.from_rows("pq", [[0, 1], [0, 0]])
    UX = ultra.ultra_set(S.points)
    carried = ApproachSpace(ultra.extend(S.matrix))
    assert list(carried.points) == list(UX)
    rep = is_contraction(lambda w: S.conv(w[0], w[1]), product(carried, S), halfline(S.entries()))
    assert not rep
