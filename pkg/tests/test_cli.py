from pathlib import Path

import pytest

from homotopy_algebra import docformat
from homotopy_algebra.cli import main
from homotopy_algebra.halg import check_ainf

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_check_dsq_ainf(capsys):
    code, out, _ = run(capsys, "check-dsq", "--family", "ainf", "--max-arity", 4)
    assert code == 0
    assert "residual 0" in out.splitlines()[-1]
    assert "FAIL" not in out


def test_check_dsq_linf(capsys):
    code, out, _ = run(capsys, "check-dsq", "--family", "linf", "--max-arity", 4)
    assert code == 0


def test_diff_table_ainf_three(capsys):
    code, out, _ = run(capsys, "diff-table", "--family", "ainf", "--arity", 3)
    assert code == 0
    assert out.startswith("d m3 = 2 terms")
    signs = [line[0] for line in out.splitlines() if line[:2] in ("+ ", "- ")]
    assert sorted(signs) == ["+", "-"]
    assert "m2(m2(1,2),3)" in out and "m2(1,m2(2,3))" in out


def test_diff_table_machine(capsys):
    code, out, _ = run(capsys, "diff-table", "--family", "linf", "--arity", 4, "--format", "machine")
    assert code == 0
    assert len(out.splitlines()) == 10


def test_check_algebra_failure_located(capsys):
    code, out, _ = run(capsys, "check-algebra", DATA / "nonassoc.alg", "--max-arity", 3)
    assert code == 1
    fails = [line for line in out.splitlines() if line.startswith("[FAIL]")]
    assert fails and all("n=3" in line for line in fails)


@pytest.mark.parametrize("name", ["massey", "sl2", "sl2_cone", "truncated_poly"])
def test_check_algebra_passes(capsys, name):
    code, out, _ = run(capsys, "check-algebra", DATA / f"{name}.alg")
    assert code == 0


def test_check_algebra_non_jacobi(capsys):
    code, out, _ = run(capsys, "check-algebra", DATA / "non_jacobi.alg", "--format", "machine")
    assert code == 1
    assert "linf\t3\tfail" in out


def test_transfer_writes_document(capsys, tmp_path):
    target = tmp_path / "minimal.alg"
    code, out, _ = run(capsys, "transfer", DATA / "massey.alg", "--max-arity", 5, "--out", target)
    assert code == 0
    doc = docformat.load(target)
    assert doc.kind == "ainf" and doc.differential == []
    X = doc.to_algebra()
    assert check_ainf(X).passed
    # zero components are not written
    assert 1 in doc.morphism_maps() and set(doc.morphism_maps()) <= {1, 2, 3, 4}


def test_transfer_refuses_failing_source(capsys):
    code, _, err = run(capsys, "transfer", DATA / "nonassoc.alg", "--max-arity", 3)
    assert code == 1
    assert "transfer refused" in err


def test_transfer_refuses_linf(capsys):
    code, _, err = run(capsys, "transfer", DATA / "sl2.alg")
    assert code == 2


def test_homology(capsys):
    code, out, _ = run(capsys, "homology", "--family", "linf", "--arity", 4)
    assert code == 0
    assert out.splitlines() == ["arity 4 degree 0: 6", "arity 4 degree 1: 0", "arity 4 degree 2: 0"]


def test_minimality(capsys):
    code, out, _ = run(capsys, "minimality", "--family", "ainf", "--max-arity", 5)
    assert code == 0
    assert "decomposable" in out


@pytest.mark.parametrize("argv", [
    ["check-dsq", "--family", "ainf", "--max-arity", "7"],
    ["check-dsq", "--family", "linf", "--max-arity", "6"],
    ["homology", "--family", "ainf", "--arity", "6"],
])
def test_cap_refusal(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "cap" in err


def test_cap_override(capsys):
    code, _, _ = run(capsys, "check-dsq", "--family", "linf", "--max-arity", 3, "--cap", 3)
    assert code == 0
    code, _, err = run(capsys, "check-dsq", "--family", "linf", "--max-arity", 4, "--cap", 3)
    assert code == 2 and "cap of 3" in err


def test_parse_error_reports_line(capsys, tmp_path):
    bad = tmp_path / "bad.alg"
    bad.write_text("kind: ainf\n[basis]\nx 0\n[operation 2]\nx x -> x 1/0\n")
    code, _, err = run(capsys, "check-algebra", bad)
    assert code == 2
    assert "line 5" in err


def test_missing_file(capsys, tmp_path):
    code, _, _ = run(capsys, "check-algebra", tmp_path / "nope.alg")
    assert code == 2


def test_machine_output_is_deterministic(capsys):
    argv = ["check-algebra", DATA / "sl2_cone.alg", "--format", "machine"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second
    for line in first[1].splitlines():
        name, arity, status, residual = line.split("\t")
        assert status in ("pass", "fail") and int(arity) >= 2 and int(residual) >= 0


def test_exit_status_tracks_report(capsys):
    for name in ("massey", "nonassoc", "non_jacobi", "sl2"):
        code, out, _ = run(capsys, "check-algebra", DATA / f"{name}.alg", "--format", "machine")
        failed = any("\tfail\t" in line for line in out.splitlines())
        assert code == (1 if failed else 0)
