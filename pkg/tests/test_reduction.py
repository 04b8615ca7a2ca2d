from fractions import Fraction

import pytest

from srdegree import h_vector
from srdegree.degree import DegreeMap
from srdegree.errors import PreconditionError
from srdegree.exactalg import GF
from srdegree.reduction import (
    anisotropy_certify,
    anisotropy_fuzz,
    gorenstein_dimension,
    gorenstein_profile,
    hbar_basis,
    implication_fuzz,
    lefschetz_injectivity,
    pairing_matrix,
    pairing_rank_bound,
    relation_vectors,
    sample_point_degree,
    value_bound,
)
from srdegree.seeding import rng_for
from srdegree.linalg import rank


@pytest.mark.parametrize("name", ["s0", "triangle", "tetrahedron", "bipyr"])
@pytest.mark.parametrize("ch", [0, 2, 3])
@pytest.mark.parametrize("mode", ["randomized", "exact"])
def test_sphere_dims_are_h_vectors(request, name, ch, mode):
    cx = request.getfixturevalue(name)
    prof = gorenstein_profile(cx, ch, mode, seeds=3)
    assert prof.dims == h_vector(cx)
    if mode == "exact":
        assert all(r.lower == r.upper == r.value for r in prof.results)


@pytest.mark.parametrize("ch", [0, 2])
def test_octahedron_dims(octa, ch):
    assert gorenstein_profile(octa, ch, "exact").dims == (1, 3, 3, 1)


def test_rp2_profiles(rp2):
    prof = gorenstein_profile(rp2, 0)
    assert prof.dims == (0, 0, 0, 0) and "orientable" in prof.note
    assert gorenstein_profile(rp2, 2, "exact").dims == (1, 3, 3, 1)


def test_randomized_reports_seed_data(octa, oriented):
    res = gorenstein_dimension(octa, oriented(octa), 1, "randomized", 2, seeds=4)
    assert res.value == 3 and len(res.per_seed_ranks) == 4
    assert res.per_seed_bound == Fraction(pairing_rank_bound(octa, 6), 2 ** 16)


def test_symbolic_pairing_matrix(triangle, oriented):
    pm = pairing_matrix(triangle, oriented(triangle), 1)
    assert pm.mode == "symbolic" and pm.shape == (3, 3)
    dm = DegreeMap(triangle, oriented(triangle))
    assert pm.entries[0][1] == dm.monomial((1, 1, 0))
    t = pm.transpose()
    assert t.m == 1 and t.entries[1][0] == pm.entries[0][1]
    with pytest.raises(PreconditionError):
        pairing_matrix(triangle, oriented(triangle), 3)


def test_relations_pair_to_zero(bipyr, oriented):
    o = oriented(bipyr, 3)
    ev = sample_point_degree(bipyr, o, GF(3, 16), rng_for(1, "test"))
    for m in (1, 2):
        pm = pairing_matrix(bipyr, o, m, ev)
        rels = relation_vectors(bipyr, m, ev)
        assert len(pm.rows) - rank(rels) == h_vector(bipyr)[m]
        for vec in rels:
            for col in zip(*pm.entries):
                total = ev.zero
                for x, y in zip(vec, col):
                    total = total + x * y
                assert not total


def test_bounds(octa):
    assert value_bound(octa) == 21
    assert pairing_rank_bound(octa, 3) == 63


def test_hbar_basis(octa, oriented):
    basis = hbar_basis(octa, oriented(octa, 2), 1, 2, dim=3)
    assert len(basis) == 3 and all(sum(v) == 1 for v in basis)


@pytest.mark.parametrize("p", [2, 3])
def test_lefschetz_on_octahedron(octa, oriented, p):
    o = oriented(octa, p)
    assert [lefschetz_injectivity(octa, o, m, 1, "exact", p) for m in range(3)] == [True, True, False]
    assert lefschetz_injectivity(octa, o, 0, 3, "exact", p)
    with pytest.raises(PreconditionError):
        lefschetz_injectivity(octa, o, 2, 2)


@pytest.mark.parametrize("method", ["auto", "decomposition"])
@pytest.mark.parametrize("name, p, m, dim", [("s0", 2, 0, 1), ("triangle", 2, 1, 1), ("tetrahedron", 3, 1, 1),
                                             ("triangle", 2, 0, 1), ("tetrahedron", 2, 1, 1)])
def test_anisotropy_certificates(request, oriented, name, p, m, dim, method):
    cx = request.getfixturevalue(name)
    cert = anisotropy_certify(cx, oriented(cx, p), p, m, method=method)
    assert cert.passed and cert.dim == cert.semilinear_rank == dim
    assert len(cert.witness_columns) == dim


def test_anisotropy_derivative_witness_on_octahedron(octa, oriented):
    # l^3 expands to a huge rational function here; derivatives avoid it
    for m in (0, 1):
        cert = anisotropy_certify(octa, oriented(octa, 2), 2, m)
        assert cert.passed and cert.note == "independent derivatives at a point"
    with pytest.raises(PreconditionError):
        anisotropy_certify(octa, oriented(octa, 2), 2, 1, method="guess")


def test_anisotropy_preconditions(triangle, oriented):
    with pytest.raises(PreconditionError):
        anisotropy_certify(triangle, oriented(triangle, 2), 2, 2)
    with pytest.raises(PreconditionError):
        anisotropy_certify(triangle, oriented(triangle, 3), 2, 1)


@pytest.mark.parametrize("t, m", [(1, 1), (2, 1), (3, 0)])
def test_anisotropy_fuzz_char_0(tetrahedron, oriented, t, m):
    rep = anisotropy_fuzz(tetrahedron, oriented(tetrahedron), 0, t, m, trials=20)
    assert rep.passed and rep.trials == 20


def test_anisotropy_fuzz_char_2(octa, oriented):
    rep = anisotropy_fuzz(octa, oriented(octa, 2), 2, 2, 1, trials=20)
    assert rep.passed


def test_implication_fuzz(bipyr, oriented):
    rep = implication_fuzz(bipyr, oriented(bipyr, 2), 2, trials=40)
    assert rep.failures == 0 and rep.trials == 40 and rep.premise_hits > 0


def test_profile_is_reproducible(bipyr):
    a = gorenstein_profile(bipyr, 2, seed=5, seeds=2)
    b = gorenstein_profile(bipyr, 2, seed=5, seeds=2)
    assert [r.per_seed_ranks for r in a.results] == [r.per_seed_ranks for r in b.results]
