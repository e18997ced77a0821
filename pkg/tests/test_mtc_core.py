"""Category data: loading, axiom residuals and derived quantities"""

import json

import numpy as np
import pytest

from conftest import MODULAR, category_path
from src.errors import ConsistencyError, ParseError
from src.mtc_core.axioms import check_category
from src.mtc_core.category import load_category, parse_category, read_category, smatrix, verify_killing_ring

GOLDEN = (1 + np.sqrt(5)) / 2


@pytest.mark.parametrize("name", MODULAR)
def test_shipped_categories_pass_every_axiom(name):
    cat = read_category(category_path(name))
    failing = [c.name for c in check_category(cat) if not c.passed]
    assert failing == []


@pytest.mark.parametrize("name", MODULAR)
def test_killing_ring(name, engines):
    cat = engines(name).cat
    for l in range(cat.rank):
        expected = cat.global_dim_sq if l == 0 else 0.0
        assert abs(verify_killing_ring(cat, l) - expected) < 1e-9


def test_killing_ring_accepts_label_names(engines):
    cat = engines("fibonacci").cat
    assert abs(verify_killing_ring(cat, "tau")) < 1e-9


def test_fibonacci_dimensions(engines):
    cat = engines("fibonacci").cat
    assert np.allclose(cat.dims, [1.0, GOLDEN])
    assert cat.global_dim_sq.real == pytest.approx((5 + np.sqrt(5)) / 2)


def test_ising_dimensions(engines):
    cat = engines("ising").cat
    assert np.allclose(sorted(cat.dims.real), [1.0, 1.0, np.sqrt(2)])
    assert cat.global_dim_sq.real == pytest.approx(4.0)


def test_vect_is_trivial(engines):
    cat = engines("vect").cat
    assert cat.rank == 1
    assert np.allclose(smatrix(cat), [[1.0]])
    assert np.allclose(cat.twists, [1.0])


@pytest.mark.parametrize("name", MODULAR)
def test_s_tilde_invertible_and_symmetric(name, engines):
    cat = engines(name).cat
    s = smatrix(cat)
    assert abs(np.linalg.det(s)) > 1e-6
    assert np.allclose(s, s.T)


@pytest.mark.parametrize("name", MODULAR)
def test_twists_are_phases(name, engines):
    cat = engines(name).cat
    assert np.allclose(np.abs(cat.twists), 1.0)
    assert cat.twists[0] == pytest.approx(1.0)


def test_perturbed_f_symbol_names_pentagon():
    cat = read_category(category_path("fibonacci_bad_f"))
    failing = [c.name for c in check_category(cat) if not c.passed]
    assert "pentagon" in failing
    with pytest.raises(ConsistencyError) as excinfo:
        load_category(category_path("fibonacci_bad_f"))
    assert excinfo.value.axiom == "pentagon"
    assert excinfo.value.residual > 1e-3


def test_missing_file_is_a_parse_error(tmp_path):
    with pytest.raises(ParseError):
        read_category(str(tmp_path / "absent.json"))


def test_invalid_json_is_a_parse_error(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{ not json")
    with pytest.raises(ParseError):
        read_category(str(path))


@pytest.mark.parametrize(
    "doc",
    [
        {"schema": "other/1", "labels": ["1"]},
        {"labels": []},
        {"labels": ["1", "1"]},
        {"labels": ["1", "a"], "duals": {"1": "1"}},
        {"labels": ["1", "a"], "duals": {"1": "a", "a": "1"}},
    ],
)
def test_malformed_documents(doc):
    with pytest.raises(ParseError):
        parse_category(doc)


def test_unknown_label(engines):
    with pytest.raises(ParseError):
        engines("fibonacci").cat.label_index("sigma")


def test_loads_from_any_path(tmp_path):
    with open(category_path("fibonacci"), encoding="utf-8") as handle:
        doc = json.load(handle)
    path = tmp_path / "copy.json"
    path.write_text(json.dumps(doc))
    cat = load_category(str(path))
    assert cat.labels == ("1", "tau")
    assert cat.N[1, 1].tolist() == [1, 1]
