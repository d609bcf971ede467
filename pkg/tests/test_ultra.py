import itertools

import pytest

from approach_spaces import ultra
from approach_spaces.numrel import NumRel, PointSet, compose, converse, from_map, leq, scale_join
from approach_spaces.quantale import INF, Cost

from helpers import points, rand_cost, rand_map, rand_rel


def test_enumeration_and_membership():
    for n in range(5):
        X = points(n)
        us = ultra.enumerate_ultrafilters(X)
        assert len(us) == n
        for u in us:
            for A in ultra.subsets(X):
                assert (A in u) == (u.point in A)
                assert (A in u) != (frozenset(X) - A in u)


def test_literal_cap():
    with pytest.raises(ultra.LiteralTooLarge):
        list(ultra.subsets(points(ultra.LITERAL_CAP + 1)))


def test_from_members_rejects_non_ultrafilters():
    X = points(3)
    with pytest.raises(ValueError):
        ultra.from_members(X, [frozenset(X)])
    assert ultra.from_members(X, ultra.unit("x1", X).members()).point == "x1"


def test_push_forward_examples(rng):
    X, Y = points(3), points(3, "y")
    for x in X:
        u = ultra.unit(x, X)
        assert ultra.push_forward(lambda p: p, u, X) == u
        assert ultra.push_forward(lambda p: "y2", u, Y) == ultra.unit("y2", Y)
    for _ in range(20):
        f = rand_map(rng, X, Y)
        for u in ultra.enumerate_ultrafilters(X):
            fu = ultra.push_forward(f, u, Y)
            assert fu == ultra.push_forward_literal(f, u, Y)
            for B in ultra.subsets(Y):
                assert (B in fu) == (frozenset(x for x in X if f[x] in B) in u)


def test_monad_laws():
    X = points(3)
    UX = ultra.ultra_set(X)
    for u in UX:
        assert ultra.mult(ultra.unit(u, UX)) == u
        assert ultra.mult(ultra.push_forward(lambda x: ultra.unit(x, X), u, UX)) == u
    for big in ultra.enumerate_ultrafilters(UX):
        assert ultra.mult(big) == ultra.mult_literal(big)


def test_mult_comprehension_two_points():
    X = points(2)
    UX = ultra.ultra_set(X)
    for big in ultra.enumerate_ultrafilters(UX):
        m = ultra.mult(big)
        for A in ultra.subsets(X):
            assert (A in m) == (ultra.sharp(A, X) in big)


def test_mult_rejects_flat_ultrafilter():
    with pytest.raises(TypeError):
        ultra.mult(ultra.unit("x0", points(2)))


def test_extension_principal_and_literal(rng):
    X, Y = points(3), points(3, "y")
    for _ in range(10):
        r = rand_rel(rng, X, Y)
        Ur = ultra.extend(r)
        assert Ur == ultra.extend_literal(r)
        for a, b in itertools.product(Ur.source, Ur.target):
            assert Ur(a, b) == r(a.point, b.point)


def test_extension_commutes_with_converse_and_action(rng):
    X, Y = points(3), points(2, "y")
    for _ in range(10):
        r = rand_rel(rng, X, Y)
        u = rand_cost(rng)
        assert ultra.extend_literal(converse(r)) == converse(ultra.extend_literal(r))
        assert ultra.extend_literal(scale_join(u, r)) == scale_join(u, ultra.extend_literal(r))


def test_xi():
    V = ultra.value_carrier(["1", "2", "5"])
    u = ultra.unit(Cost(2), V)
    assert ultra.xi_literal(u) == ultra.xi(u) == 2
    for v in ["0", "1/2", "3"]:
        for t in ["0", "1", "inf"]:
            W = ultra.value_carrier([v, t, Cost(v) | Cost(t)])
            shifted = ultra.push_forward(lambda c: c | Cost(t), ultra.unit(Cost(v), W), W)
            assert ultra.xi_literal(shifted) == Cost(v) | Cost(t)


def test_pullback_formula(rng):
    X, Y = points(3), points(3, "y")
    r = rand_rel(rng, X, Y)
    for a in ultra.enumerate_ultrafilters(X):
        for b in ultra.enumerate_ultrafilters(Y):
            assert ultra.extU_pullback(r, a, b) == r(a.point, b.point)
    top = NumRel.constant(X, Y, INF)
    assert ultra.extU_pullback(top, ultra.unit("x0", X), ultra.unit("y1", Y)) == INF


def test_weak_pullbacks(rng):
    for _ in range(10):
        X, Y, Z = points(3), points(3, "y"), points(2, "z")
        f, g = rand_map(rng, X, Z), rand_map(rng, Y, Z)
        P = PointSet([(x, y) for x in X for y in Y if f[x] == g[y]])
        for a in ultra.enumerate_ultrafilters(X):
            for b in ultra.enumerate_ultrafilters(Y):
                if ultra.push_forward(f, a, Z) != ultra.push_forward(g, b, Z):
                    continue
                assert any(ultra.push_forward_literal(lambda p: p[0], w, X) == a
                           and ultra.push_forward_literal(lambda p: p[1], w, Y) == b
                           for w in ultra.enumerate_ultrafilters(P))


def test_oplax_unit_and_naturality_of_mult(rng):
    X, Y = points(2), points(3, "y")
    UX, UY = ultra.ultra_set(X), ultra.ultra_set(Y)
    eX = from_map(lambda x: ultra.unit(x, X), X, UX)
    eY = from_map(lambda y: ultra.unit(y, Y), Y, UY)
    mX = from_map(ultra.mult, ultra.ultra_set(UX), UX)
    mY = from_map(ultra.mult, ultra.ultra_set(UY), UY)
    for _ in range(10):
        r = rand_rel(rng, X, Y)
        Ur = ultra.extend_literal(r)
        assert leq(compose(r, eY), compose(eX, Ur))
        assert compose(mX, Ur) == compose(ultra.extend(Ur), mY)
