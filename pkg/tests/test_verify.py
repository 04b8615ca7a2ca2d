from fractions import Fraction

import pytest

from srdegree import bipyramid, octahedron, rp2_six_vertex, simplex_boundary
from srdegree.errors import PreconditionError
from srdegree.verify import EmptySuite, VerificationTask, run_task, t11_bound, t12_bound


def _run(theorem, cx=None, p=2, mode="exact", jobs=1, **kw):
    return run_task(VerificationTask(theorem, cx, "", p, mode, **kw), jobs)


@pytest.mark.parametrize("theorem, p", [("T1.1", 2), ("T1.1", 3), ("T1.2", 2), ("T1.2", 3),
                                        ("C3.1", 2)])
def test_identity_suites_pass_on_small_spheres(theorem, p):
    for cx in (simplex_boundary(1), simplex_boundary(2)):
        assert _run(theorem, cx, p).status == "PASS", (theorem, p, cx)


def test_implication_suite():
    assert _run("C3.2", simplex_boundary(2), 2, "randomized").status == "PASS"
    # on S^0 only m = 0 fits and no sample can meet the premise: not a vacuous pass
    rep = _run("C3.2", simplex_boundary(1), 2, "randomized")
    assert rep.status == "FAIL"
    assert [r.key for r in rep.results if not r.passed] == ["premise-hits"]


def test_randomized_identities_on_bipyramid():
    rep = _run("T1.1", bipyramid(), 3, "randomized", seeds=2)
    assert rep.status == "PASS" and len(rep.per_seed) == 2
    rep = _run("T1.2", bipyramid(), 2, "randomized", seeds=1)
    assert rep.status == "PASS"


def test_simplex_identity_counts():
    assert _run("T2.3", None, 2, dims=(2,)).instances >= 189
    assert _run("T2.3", None, 3, dims=(2,)).instances >= 1620


def test_cap_gives_smoke_status():
    rep = _run("T1.1", octahedron(), 2, "randomized", seeds=1, cap=10)
    assert rep.status == "SMOKE" and rep.instances == 10


def test_empty_suite_is_an_error():
    with pytest.raises(EmptySuite):
        _run("T2.3", None, 2, dims=(2,), cap=0)


def test_preconditions():
    with pytest.raises(PreconditionError):
        VerificationTask("X9.9")
    with pytest.raises(PreconditionError):
        VerificationTask("T1.1", mode="fast")
    with pytest.raises(PreconditionError):
        _run("T1.1", None, 2)
    with pytest.raises(PreconditionError):
        _run("T1.1", simplex_boundary(2), 0)


def test_psi_eigen_suite_reports_the_observed_scalar():
    rep = _run("T2.5", simplex_boundary(2), 0, r_max=2)
    bad = [r for r in rep.results if not r.passed]
    assert rep.status == "FAIL"
    assert {r.key.split()[0] for r in bad} == {"r=2"}
    assert all("equals (-1)^(dr) = 1" in r.detail for r in bad)
    assert _run("T2.5", simplex_boundary(2), 3).status == "PASS"


def test_psi_factor_suite_points_at_the_other_side():
    rep = _run("E2.4", None, 0, samples=3)
    assert rep.failures > 0
    assert all("other side" in r.detail for r in rep.results if not r.passed)


@pytest.mark.parametrize("theorem", ["L2.6", "PLK"])
def test_operator_suites(theorem):
    assert _run(theorem, None, 0, samples=5).status == "PASS"


def test_operator_suites_in_char_p():
    assert _run("L2.6", None, 5, samples=5).status == "PASS"
    assert _run("E2.4", None, 5, samples=5, r_max=1).status == "PASS"


def test_cross_characteristic():
    rep = _run("SPEC", simplex_boundary(2), 3, "randomized", seeds=2)
    assert rep.status == "PASS"
    rep = _run("SPEC", rp2_six_vertex(), 2, "randomized", seeds=2)
    assert rep.status == "PASS"
    assert [r.key for r in rep.results if r.expected_difference] == ["dims"]


def test_schwartz_zippel_bounds():
    oc = octahedron()
    assert t11_bound(oc, 2, (3, 0, 0, 0, 0, 0)) == 21
    assert t11_bound(oc, 2, (1, 1, 1, 0, 0, 0)) == 3
    assert t12_bound(oc, 2, (3, 0, 0, 0, 0, 0)) == 42
    rep = _run("T1.1", oc, 2, "randomized", seeds=2)
    assert all(b == Fraction(21, 2 ** 16) for _, b in rep.per_seed)


def test_jobs_do_not_change_results():
    tri = simplex_boundary(2)
    for theorem in ("C3.1", "T1.2"):
        one = _run(theorem, tri, 2, "randomized", seeds=2)
        two = _run(theorem, tri, 2, "randomized", jobs=3, seeds=2)
        assert [(r.key, r.passed) for r in one.results] == [(r.key, r.passed) for r in two.results]
