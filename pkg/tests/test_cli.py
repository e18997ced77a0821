"""Command line: exit codes, reports and saved algebras"""

import json

import pytest

from conftest import algebra_path, category_path, correlator_path
from main import main, parse_arguments
from src.algebra.cardy import verify_cardy
from src.algebra.io import load_cardy


@pytest.fixture(autouse=True)
def in_tmp(tmp_path, monkeypatch):
    """Keep the log directory out of the checkout"""
    monkeypatch.chdir(tmp_path)
    return tmp_path


def read_report(path):
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def last_line(capsys):
    return capsys.readouterr().out.strip().splitlines()[-1]


def test_category_is_required():
    with pytest.raises(SystemExit):
        parse_arguments(["check-category"])


def test_check_category_passes(in_tmp):
    out = str(in_tmp / "report.json")
    assert main(["check-category", "--category", "fibonacci", "--format", "json", "--out", out]) == 0
    doc = read_report(out)
    assert doc["passed"]
    assert doc["category"] == "fibonacci"
    assert {c["suite"] for c in doc["checks"]} == {"category"}


def test_check_category_with_extra_suites():
    assert main(["check-category", "--category", "vect", "--suite", "category,diagram,center"]) == 0


def test_check_category_reports_the_failing_axiom(in_tmp):
    out = str(in_tmp / "report.json")
    code = main(["check-category", "--category", "fibonacci_bad_f", "--format", "json", "--out", out])
    assert code == 1
    failed = read_report(out)["summary"]["failed"]
    assert "category:pentagon" in failed


def test_category_path_is_accepted():
    assert main(["check-category", "--category", category_path("vect")]) == 0


@pytest.mark.parametrize("argv", [
    ["check-category", "--category", "missing"],
    ["check-category", "--category", "vect", "--suite", "bogus"],
    ["check-category", "--category", "vect", "--tol", "0"],
    ["check-cardy", "--category", "vect", "--algebra", "nowhere.json"],
])
def test_input_errors(argv):
    assert main(argv) == 2


def test_inconsistent_category_stops_later_commands():
    assert main(["check-cardy", "--category", "fibonacci_bad_f", "--canonical"]) == 1


def test_check_cardy_canonical():
    assert main(["check-cardy", "--category", "ising", "--canonical"]) == 0


def test_check_cardy_with_algebra_files(in_tmp):
    out = str(in_tmp / "report.json")
    argv = ["check-cardy", "--category", "fibonacci", "--algebra", algebra_path("gauged_cardy"),
            "--algebra", algebra_path("fibonacci_endomorphism"), "--format", "json", "--out", out]
    assert main(argv) == 0
    doc = read_report(out)
    assert doc["extras"]["cardy"] == "canonical (gauged)"
    assert any(c["note"] == "algebra file" for c in doc["checks"])


def test_check_cardy_corrupted():
    argv = ["check-cardy", "--category", "fibonacci", "--algebra", algebra_path("corrupt_rescale_coproduct")]
    assert main(argv) == 1


def test_check_sewing_canonical(in_tmp):
    out = str(in_tmp / "report.json")
    assert main(["check-sewing", "--category", "fibonacci", "--format", "json", "--out", out]) == 0
    doc = read_report(out)
    assert doc["extras"]["relations"] == "32/32"
    assert [c["name"] for c in doc["checks"]][:3] == ["R1", "R2", "R3"]


def test_check_sewing_non_solution():
    argv = ["check-sewing", "--category", "fibonacci", "--correlators", correlator_path("non_solution")]
    assert main(argv) == 1


def test_extract_inflated(in_tmp, engines):
    out, saved = str(in_tmp / "report.json"), str(in_tmp / "extracted.json")
    argv = ["extract", "--category", "fibonacci", "--correlators", correlator_path("inflated"),
            "--save", saved, "--format", "json", "--out", out]
    assert main(argv) == 0
    doc = read_report(out)
    assert doc["extras"]["isomorphic"] is True
    assert doc["extras"]["retract"] == "split"

    lf = engines("fibonacci").lf
    assert all(c.passed for c in verify_cardy(lf, load_cardy(lf, saved)))


def test_extract_with_reference():
    argv = ["extract", "--category", "vect", "--correlators", correlator_path("inflated"),
            "--reference", algebra_path("canonical_cardy")]
    assert main(argv) == 0


def test_extract_refuses_a_non_solution():
    argv = ["extract", "--category", "fibonacci", "--correlators", correlator_path("non_solution")]
    assert main(argv) == 1


@pytest.mark.parametrize("extra, expected", [
    (["--genus", "1"], "4"),
    (["--boundary", "tau:tau", "tau:tau"], "1"),
    (["--boundary", "1:1"], "1"),
    (["--boundary", "tau:1"], "0"),
    (["--genus", "1", "--boundary", "0:0"], "4"),
])
def test_dim(extra, expected, capsys):
    assert main(["dim", "--category", "fibonacci"] + extra) == 0
    assert last_line(capsys) == expected


@pytest.mark.parametrize("extra", [["--boundary", "phi:tau"], ["--boundary", "tau"], ["--genus", "-1"]])
def test_dim_input_errors(extra):
    assert main(["dim", "--category", "fibonacci"] + extra) == 2
