from pathlib import Path

import pytest

from srdegree.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_golden(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "T1.2", "--complex", "triangle",
                       "--char", "2", "--mode", "exact", "--jobs", "1")
    assert code == 0
    assert out == (GOLDEN / "verify_t12_triangle_char2.txt").read_text()


def test_dims_golden(capsys):
    code, out, _ = run(capsys, "dims", "--complex", "octahedron", "--char", "2", "--mode", "exact")
    assert code == 0
    assert out == (GOLDEN / "dims_octahedron_char2.txt").read_text()


def test_output_independent_of_jobs(capsys):
    args = ["verify", "--theorem", "T1.1", "--complex", "bipyramid", "--char", "2",
            "--mode", "randomized", "--seeds", "3"]
    _, one, _ = run(capsys, *args, "--jobs", "1")
    _, two, _ = run(capsys, *args, "--jobs", "2")
    assert one == two and "status: PASS" in one


def test_seed_from_environment(capsys, monkeypatch):
    args = ["dims", "--complex", "triangle", "--char", "3", "--seeds", "2"]
    monkeypatch.setenv("SRDEGREE_SEED", "77")
    _, env, _ = run(capsys, *args)
    monkeypatch.delenv("SRDEGREE_SEED")
    _, flag, _ = run(capsys, *args, "--seed", "77")
    assert "seed: 77" in env and env == flag


def test_check_from_file(capsys, tmp_path):
    f = tmp_path / "tri.txt"
    f.write_text("# triangle\n1 2\n2 3\n1 3\n")
    code, out, _ = run(capsys, "check", str(f))
    assert code == 0 and "betti: (0, 1)" in out and "orientable: true" in out


def test_check_rp2_reports_non_orientable(capsys):
    code, out, _ = run(capsys, "check", "rp2", "--char", "0")
    assert code == 0 and "orientable: false" in out


def test_degree_value(capsys):
    code, out, _ = run(capsys, "degree", "--complex", "triangle", "--monomial", "1 1 0")
    assert code == 0
    assert "1/(a[1][1]*a[2][2] - a[1][2]*a[2][1])" in out


def test_degree_specialized_is_reproducible(capsys):
    args = ["degree", "--complex", "octahedron", "--char", "3", "--monomial", "2 1 0 0 0 0",
            "--specialize", "5"]
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b


def test_out_file(capsys, tmp_path):
    target = tmp_path / "report.txt"
    code, out, _ = run(capsys, "check", "s0", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text().startswith("srdegree-report/1\n")


def test_lefschetz_and_anisotropy(capsys):
    code, out, _ = run(capsys, "lefschetz", "--complex", "octahedron", "--char", "2", "--mode", "exact")
    assert code == 0 and "m=1: true" in out
    code, out, _ = run(capsys, "anisotropy", "--complex", "triangle", "--char", "2")
    assert code == 0 and "verdict: PASS" in out
    code, out, _ = run(capsys, "anisotropy", "--complex", "triangle", "--char", "0", "--t", "2",
                       "--trials", "10")
    assert code == 0 and "failures: 0" in out


def test_failing_suite_exits_1(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "T2.5", "--complex", "triangle",
                       "--char", "0", "--r-max", "2", "--jobs", "1")
    assert code == 1 and "status: FAIL" in out


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["verify", "--theorem", "T9.9"],
    ["dims", "--complex", "triangle", "--char", "4"],
    ["dims", "--complex", "no-such-file"],
    ["dims", "--complex", "triangle", "--seed", "-1"],
    ["degree", "--complex", "triangle", "--monomial", "1 1"],
    ["verify", "--theorem", "T1.1", "--char", "2"],
    ["verify", "--theorem", "T2.3", "--dims", "2", "--cap", "0"],
    ["verify", "--theorem", "T1.1", "--complex", "triangle", "--char", "0"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err.startswith("srdegree:")


def test_malformed_file_exits_2(capsys, tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("1 2\n2 2\n")
    code, _, err = run(capsys, "check", str(f))
    assert code == 2 and "DuplicateVertexInFacet" in err
