import random

import pytest
from hypothesis import given, settings, strategies as st

from srdegree import PointDegree, RationalFunction, bipyramid, cross_polytope, orient, reduce_mod_p, simplex_boundary
from srdegree.degree import (
    CofactorSystem,
    DegreeMap,
    ell_power,
    face_supported_monomials,
    monomials_of_degree,
    random_point,
    simplex_degree,
    xpoly_mul,
    xpoly_pow,
)
from srdegree.errors import AuxiliarySpecializationDegenerate, DenominatorVanishes, PreconditionError
from srdegree.exactalg import GF


def _a(dm, i, j):
    return RationalFunction.variable(dm.ring, i, j)


def test_s0_values(s0, oriented):
    dm = DegreeMap(s0, oriented(s0))
    assert dm.monomial((1, 0)) == 1 / _a(dm, 1, 1)
    assert dm.monomial((0, 1)) == -1 / _a(dm, 1, 2)


def test_triangle_edge_value(triangle, oriented):
    dm = DegreeMap(triangle, oriented(triangle))
    a = lambda i, j: _a(dm, i, j)
    assert dm.monomial((1, 1, 0)) == 1 / (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1))


def test_triangle_square_by_linear_system(triangle, oriented):
    # x_1 * mu_i = 0 gives a_i1 deg(x1^2) = -a_i2 deg(x1 x2) - a_i3 deg(x1 x3), i = 1, 2
    o = oriented(triangle)
    dm = DegreeMap(triangle, o)
    a = lambda i, j: _a(dm, i, j)
    bracket = lambda j, k: a(1, j) * a(2, k) - a(1, k) * a(2, j)
    d12 = o.sign((1, 2)) / bracket(1, 2)
    d13 = o.sign((1, 3)) / bracket(1, 3)
    for i in (1, 2):
        assert dm.monomial((2, 0, 0)) == -(a(i, 2) * d12 + a(i, 3) * d13) / a(i, 1)


@pytest.mark.parametrize("make", [lambda: simplex_boundary(1), lambda: simplex_boundary(3),
                                  bipyramid, lambda: cross_polytope(3)])
def test_facet_normalization(make):
    cx = make()
    o = orient(cx)
    dm = DegreeMap(cx, o)
    for F in cx.facets:
        J = tuple(1 if v in F else 0 for v in range(1, cx.n + 1))
        assert dm.monomial(J) * dm.bracket(F) == o.sign(F)
        assert dm.monomial(J) == dm.facet_degree(F)


def test_nonfaces_vanish(octa, oriented):
    dm = DegreeMap(octa, oriented(octa))
    assert dm.monomial((1, 0, 0, 1, 0, 1)) == 0
    assert dm.monomial((0, 2, 0, 0, 1, 0)) == 0


def test_lsop_relations_on_bipyramid(bipyr, oriented):
    dm = DegreeMap(bipyr, oriented(bipyr))
    for K in monomials_of_degree(bipyr.n, bipyr.d - 1):
        for i in range(1, bipyr.d + 1):
            total = 0
            for j in range(1, bipyr.n + 1):
                J = tuple(e + (t == j - 1) for t, e in enumerate(K))
                total = total + _a(dm, i, j) * dm.monomial(J)
            assert total == 0, (K, i)


def test_symbolic_aux_column_drops_out(triangle, oriented):
    dm = DegreeMap(triangle, oriented(triangle), aux=None)
    for J in monomials_of_degree(3, 2):
        g = dm.monomial(J)
        assert all(g.derivative(i, 0) == 0 for i in (1, 2))


def test_aux_specialization_independent(octa, oriented):
    o = oriented(octa)
    base, other = DegreeMap(octa, o), DegreeMap(octa, o, aux=(5, -3, 7))
    for J in face_supported_monomials(octa, 3)[::4]:
        assert base.monomial(J) == other.monomial(J)


@pytest.mark.parametrize("ch", [0, 3])
@pytest.mark.parametrize("aux", ["default", None, (0, 2, 0), (4, -1, 2)])
def test_monomial_matches_plain_addition(bipyr, tetrahedron, oriented, ch, aux):
    # the fast sum and the unit-vector reduction against the naive facet sum
    for cx in (tetrahedron, bipyr):
        dm = DegreeMap(cx, oriented(cx, ch), characteristic=ch, aux=aux)
        for J in monomials_of_degree(cx.n, 3)[::3]:
            fast, slow = dm.monomial(J), dm.monomial_by_addition(J)
            assert (fast.num, fast.den) == (slow.num, slow.den)


def test_degenerate_aux(triangle, oriented):
    with pytest.raises(AuxiliarySpecializationDegenerate):
        DegreeMap(triangle, oriented(triangle), aux=(0, 0))
    with pytest.raises(AuxiliarySpecializationDegenerate):
        DegreeMap(triangle, oriented(triangle, 2), characteristic=2, aux=(2, 4))
    with pytest.raises(PreconditionError):
        DegreeMap(triangle, oriented(triangle), aux=(1,))


def test_reduction_mod_p_commutes(triangle, oriented):
    dq = DegreeMap(triangle, oriented(triangle))
    dp = DegreeMap(triangle, oriented(triangle, 3), characteristic=3)
    for J in monomials_of_degree(3, 2):
        assert reduce_mod_p(dq.monomial(J), 3) == dp.monomial(J)


def test_bad_monomial(triangle, oriented):
    dm = DegreeMap(triangle, oriented(triangle))
    with pytest.raises(PreconditionError):
        dm.monomial((1, 0, 0))
    with pytest.raises(PreconditionError):
        simplex_degree(dm.cofactors((1, 2)), (1, 1))


def test_point_degree_matches_symbolic(bipyr, oriented):
    o = oriented(bipyr, 5)
    dm = DegreeMap(bipyr, o, characteristic=5)
    F = GF(5, 3)
    point = random_point(dm.ring, F, random.Random(4))
    for i in range(1, 4):
        point[dm.ring.index(i, 0)] = F(i)
    ev = PointDegree(bipyr, o, F, point)
    for J in monomials_of_degree(bipyr.n, 3)[::3]:
        g = dm.monomial(J)
        want = dm.ring.evaluate(g.num, point, F) / dm.ring.evaluate(g.den, point, F)
        assert ev.monomial(J) == want


def test_point_degree_detects_vanishing_cofactor(triangle, oriented):
    F = GF(3)
    ev = PointDegree(triangle, oriented(triangle, 3), F, [F.zero] * 8)
    with pytest.raises(DenominatorVanishes):
        ev.monomial((1, 1, 0))


def test_cofactors_of_identity_block():
    cof = CofactorSystem([[1, 2], [1, 0], [0, 1]], 0)
    assert cof.X == [1, -1, -2]
    with pytest.raises(PreconditionError):
        CofactorSystem([[1, 0], [0, 1]], 0)


def test_x_polynomial_helpers():
    f = {(1, 0): 1, (0, 1): 1}
    assert xpoly_pow(f, 2, 2, 1) == {(2, 0): 1, (1, 1): 2, (0, 2): 1}
    assert xpoly_mul(f, {(1, 0): 1, (0, 1): -1}) == {(2, 0): 1, (0, 2): -1}
    assert ell_power(2, 2, lambda c: c % 2) == {(2, 0): 1, (0, 2): 1}
    assert len(monomials_of_degree(4, 3)) == 20


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([(1, 0), (2, 0), (3, 0), (2, 1), (3, 1)]), st.sampled_from([0, 3, 7]),
       st.integers(0, 2 ** 32))
def test_relations_and_duality_at_points(shape, p, seed):
    d, kind = shape
    cx = simplex_boundary(d) if kind == 0 else cross_polytope(d)
    o = orient(cx, p)
    F = GF(p, 4) if p else GF(10007)
    rng = random.Random(seed)
    point = [F.random_nonzero(rng) for _ in range(d * (cx.n + 1))]
    ev = PointDegree(cx, o, F, point)
    try:
        for F_ in cx.facets:
            ev.cofactors(F_)
    except DenominatorVanishes:
        return
    for K in monomials_of_degree(cx.n, d - 1):
        for i in range(1, d + 1):
            total = F.zero
            for j in range(1, cx.n + 1):
                J = tuple(e + (t == j - 1) for t, e in enumerate(K))
                total = total + ev.entry(i, j) * ev.monomial(J)
            assert total == F.zero
    flipped = PointDegree(cx, o.flipped(), F, point)
    J = monomials_of_degree(cx.n, d)[0]
    assert flipped.monomial(J) == -ev.monomial(J)
