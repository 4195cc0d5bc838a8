import math
import os
import shutil
from pathlib import Path

import pytest

import geocheck

DATA = Path(__file__).resolve().parents[1] / "data"


def solver_available():
    path = os.environ.get("GEOCHECK_SOLVER")
    return bool(path) or shutil.which("z3") or shutil.which("cvc5")


needs_solver = pytest.mark.skipif(not solver_available(), reason="no SMT solver")


def test_parse_statement():
    r = geocheck.parse_statement(
        "theorem iso : ∀ (A B C : Point), IsoTriangle A B C → ∠ A:B:C = ∠ A:C:B"
    )
    assert r.name == "iso"
    assert r.params == [("A", "Point"), ("B", "Point"), ("C", "Point")]
    assert r.premise == "IsoTriangle A B C"
    assert r.conclusion == "∠ A:B:C = ∠ A:C:B"
    assert geocheck.parse_statement(r.render()).render() == r.render()


def test_normalize_and_consistency():
    assert geocheck.normalize_formula("A ≠ B ∧ B ≠ A") == geocheck.normalize_formula("B ≠ A ∧ A ≠ B")
    assert geocheck.statement_consistent(
        "theorem p : ∀ (X Y : Point), X ≠ Y → Y ≠ X",
        "theorem p : ∀ (A B : Point), A ≠ B → B ≠ A",
    )
    assert not geocheck.statement_consistent(
        "theorem p : ∀ (A B : Point), A = B → B = A",
        "theorem p : ∀ (A B : Point), A ≠ B → B ≠ A",
    )


def test_errors_carry_codes():
    with pytest.raises(geocheck.GeocheckError) as info:
        geocheck.parse_statement("theorem t : ∀ A B, A = B")
    assert info.value.code == "SortAnnotationMissing"


def test_numeric_evaluation():
    assert geocheck.evaluate_term("|(A-B)|", {"A": (0, 0), "B": (3, 4)}) == pytest.approx(5.0)
    right = geocheck.evaluate_term("∠ A:B:C", {"A": (1, 0), "B": (0, 0), "C": (0, 1)})
    assert right == pytest.approx(math.pi / 2)
    assert geocheck.evaluate("between A B C", {"A": (0, 0), "B": (1, 0), "C": (2, 0)})
    assert not geocheck.evaluate("Triangle A B C", {"A": (0, 0), "B": (1, 0), "C": (2, 0)})


def test_pass_at_k():
    problems = [(f"p{i}", "IMO") for i in range(122)]
    records = [(f"p{i}", 1, i % 6 == 0) for i in range(122)]
    p = geocheck.pass_at_k(problems, records, 1)
    assert p["solved"] == 21
    assert p["rate"] == pytest.approx(17.21)
    with pytest.raises(geocheck.GeocheckError):
        geocheck.pass_at_k(problems, records, 2)


def test_exit_codes():
    assert geocheck.exit_code("proved") == 0
    assert geocheck.exit_code("failed") == 3
    assert geocheck.exit_code("solver-missing") == 5


def test_sanity_without_solver():
    cfg = geocheck.default_config(seed=1, trials=2000)
    ok = geocheck.sanity(
        "theorem t : ∀ (A B C : Point), IsoTriangle A B C → ∠ A:B:C = ∠ A:C:B", cfg, use_solver=False
    )
    assert ok["verdict"] == "ok"
    bad = geocheck.sanity(
        "theorem t : ∀ (A B C : Point), Triangle A B C → ∠ A:B:C = ∠ A:C:B", cfg, use_solver=False
    )
    assert bad["verdict"] == "counterexample"
    assert set(bad["witness"]["points"]) == {"A", "B", "C"}


@needs_solver
def test_check_isosceles_proof():
    report = geocheck.check(DATA / "isosceles.geo")
    assert report["status"] == "proved"
    assert report["theorems"][0]["name"] == "isoTriangle_imp_eq_angles"


def test_missing_solver():
    cfg = geocheck.default_config(solver_path="/nonexistent/solver")
    report = geocheck.check(DATA / "isosceles.geo", cfg)
    assert report["status"] == "solver-missing"
    assert geocheck.exit_code(report["status"]) == 5
