"""Frobenius algebras, Cardy algebras and their data files"""

from dataclasses import replace

import numpy as np
import pytest

from conftest import MODULAR, algebra_path, correlator_path
from src.algebra.cardy import (
    CardyAlgebra,
    NotIsomorphic,
    canonical_cardy,
    cardy_isomorphic,
    closed_multiplicities,
    corrupt_cardy,
    gauge_cardy,
    modularity_sides,
    verify_cardy,
    verify_components,
)
from src.algebra.frobenius import (
    FrobeniusAlgebra,
    corrupt_multiplication,
    endomorphism_frobenius,
    frobenius_adjoint,
    transport_L,
    trivial_algebra,
    verify_frobenius,
)
from src.algebra.io import (
    build_algebra,
    build_cardy,
    dump_algebra,
    dump_cardy,
    load_algebra,
    load_cardy,
    load_inputs,
    read_document,
    write_document,
)
from src.diagram.objects import Obj
from src.errors import ParseError, ShapeMismatch

TOL = 1e-9


def failing(checks):
    return [c.name for c in checks if not c.passed]


def by_prefix(checks, prefix):
    return next(c for c in checks if c.name.startswith(prefix))


@pytest.mark.parametrize("name", MODULAR)
def test_trivial_algebra(name, engines):
    eng = engines(name)
    assert failing(verify_frobenius(eng.lf, trivial_algebra(eng.d), TOL)) == []


@pytest.mark.parametrize("name", MODULAR)
def test_endomorphism_algebra(name, engines):
    eng = engines(name)
    x = Obj.unit() + Obj.simple(eng.cat.rank - 1)
    alg = endomorphism_frobenius(eng.d, x)
    checks = verify_frobenius(eng.lf, alg, TOL)
    assert failing(checks) == []
    assert any(c.name.endswith("symmetry") for c in checks)


@pytest.mark.parametrize("name", MODULAR)
def test_transport_along_L(name, engines):
    eng = engines(name)
    lifted = transport_L(eng.lf, trivial_algebra(eng.d), commutative=True)
    checks = verify_frobenius(eng.lf, lifted, TOL)
    assert failing(checks) == []
    assert {"L(trivial): commutativity", "L(trivial): centrality"} <= {c.name for c in checks}


def test_transport_of_a_noncommutative_algebra(engines):
    eng = engines("fibonacci")
    alg = endomorphism_frobenius(eng.d, Obj.unit() + Obj.simple(1))
    lifted = transport_L(eng.lf, alg)
    assert lifted.center == eng.lf.obj(alg.carrier)
    assert failing(verify_frobenius(eng.lf, lifted, TOL)) == []


def test_corrupted_multiplication_breaks_the_unit_law(engines):
    eng = engines("fibonacci")
    alg = corrupt_multiplication(endomorphism_frobenius(eng.d, Obj.unit() + Obj.simple(1)), 0.5)
    checks = verify_frobenius(eng.lf, alg, TOL)
    assert by_prefix(checks, f"{alg.name}: left unit").residual > 1e-3


def test_structure_maps_must_fit_the_carrier(engines):
    d = engines("fibonacci").d
    tau = Obj.simple(1)
    one = d.identity(Obj.unit())
    with pytest.raises(ShapeMismatch):
        FrobeniusAlgebra("bad", tau, m=one, eta=one, delta=one, eps=one)


def test_closed_algebra_must_live_in_the_center(engines):
    d = engines("fibonacci").d
    h = trivial_algebra(d)
    with pytest.raises(ShapeMismatch):
        CardyAlgebra("bad", h, h, d.identity(Obj.unit()))


@pytest.mark.parametrize("name", MODULAR)
def test_canonical_cardy_algebra(name, engines):
    lf = engines(name).lf
    cd = canonical_cardy(lf)
    assert failing(verify_components(lf, cd, TOL)) == []
    checks = verify_cardy(lf, cd, TOL)
    assert [c.name for c in checks] == ["I modularity", "II algebra map", "III center", "IV cardy"]
    assert failing(checks) == []


@pytest.mark.parametrize("name", MODULAR)
def test_closed_multiplicities_of_the_canonical_algebra(name, engines):
    eng = engines(name)
    n = eng.cat.rank
    expected = np.zeros((n, n))
    for i in range(n):
        expected[i, eng.cat.dual[i]] = 1.0
    z = closed_multiplicities(eng.lf, canonical_cardy(eng.lf).h_cl.center)
    assert np.allclose(z, expected, atol=1e-9)


@pytest.mark.parametrize("fixture, expected", [
    ("corrupt_added_vacuum", ["I modularity"]),
    ("fibonacci_corrupt_sign_flip", ["II algebra map"]),
    ("fibonacci_corrupt_endomorphism_open", ["III center", "IV cardy"]),
    ("corrupt_rescale_coproduct", ["IV cardy"]),
    ("corrupt_scale_iota", ["II algebra map", "IV cardy"]),
])
def test_corrupted_cardy_fixtures(fixture, expected, engines):
    lf = engines("fibonacci").lf
    checks = verify_cardy(lf, load_cardy(lf, algebra_path(fixture)), TOL)
    assert failing(checks) == expected
    assert all(by_prefix(checks, name).residual >= 1e-3 for name in expected)


def test_added_vacuum_keeps_a_valid_closed_algebra(engines):
    lf = engines("ising").lf
    cd = corrupt_cardy(lf, canonical_cardy(lf), "added-vacuum")
    assert len(cd.h_cl.carrier) == lf.n + 1
    assert failing(verify_frobenius(lf, cd.h_cl, TOL)) == []
    assert failing(verify_cardy(lf, cd, TOL)) == ["I modularity"]
    lhs, rhs = modularity_sides(lf, cd.h_cl, 0, 0)
    assert lhs.distance(rhs) > 1e-3


@pytest.mark.parametrize("name", MODULAR)
def test_modularity_equation_holds_channel_by_channel(name, engines):
    lf = engines(name).lf
    h_cl = canonical_cardy(lf).h_cl
    for i in range(lf.n):
        for j in range(lf.n):
            lhs, rhs = modularity_sides(lf, h_cl, i, j)
            assert lhs.distance(rhs) < TOL, (i, j)


def test_modularity_reads_the_closed_structure(engines):
    lf = engines("fibonacci").lf
    cd = canonical_cardy(lf)
    h_cl = cd.h_cl
    zeroed = replace(h_cl, m=0 * h_cl.m, delta=0 * h_cl.delta, eta=0 * h_cl.eta, eps=0 * h_cl.eps)
    check = by_prefix(verify_cardy(lf, replace(cd, h_cl=zeroed), TOL), "I modularity")
    assert not check.passed
    shifted = corrupt_multiplication(h_cl, 0.5)
    assert not by_prefix(verify_cardy(lf, replace(cd, h_cl=shifted), TOL), "I modularity").passed


def _adjoint_case(engines, seed):
    d = engines("fibonacci").d
    alg = endomorphism_frobenius(d, Obj.unit() + Obj.simple(1))
    rng = np.random.default_rng(seed)
    return d, alg, rng


def test_frobenius_adjoint_of_identity(engines):
    d, alg, _ = _adjoint_case(engines, 0)
    ida = d.identity(alg.carrier)
    assert frobenius_adjoint(d, ida, alg, alg).distance(ida) < TOL


def test_frobenius_adjoint_is_an_involution(engines):
    d, alg, rng = _adjoint_case(engines, 1)
    f = d.random_morphism(alg.carrier, alg.carrier, rng)
    twice = frobenius_adjoint(d, frobenius_adjoint(d, f, alg, alg), alg, alg)
    assert twice.distance(f) < TOL


def test_frobenius_adjoint_reverses_composition(engines):
    d, alg, rng = _adjoint_case(engines, 2)
    f = d.random_morphism(alg.carrier, alg.carrier, rng)
    g = d.random_morphism(alg.carrier, alg.carrier, rng)
    lhs = frobenius_adjoint(d, g @ f, alg, alg)
    rhs = frobenius_adjoint(d, f, alg, alg) @ frobenius_adjoint(d, g, alg, alg)
    assert lhs.distance(rhs) < TOL


def test_rescaled_coproduct_keeps_conditions_I_to_III(engines):
    lf = engines("ising").lf
    cd = corrupt_cardy(lf, canonical_cardy(lf), "rescale-coproduct", factor=2.0)
    assert failing(verify_cardy(lf, cd, TOL)) == ["IV cardy"]


def test_unknown_corruption(engines):
    lf = engines("vect").lf
    with pytest.raises(ValueError):
        corrupt_cardy(lf, canonical_cardy(lf), "bogus")
    with pytest.raises(ParseError):
        build_cardy(lf, {"construction": "canonical", "corruption": {"kind": "bogus"}})


@pytest.mark.parametrize("name", MODULAR)
def test_gauged_algebra_is_isomorphic(name, engines):
    lf = engines(name).lf
    canonical = canonical_cardy(lf)
    gauged = gauge_cardy(lf, canonical, np.random.default_rng(11))
    assert failing(verify_cardy(lf, gauged, TOL)) == []
    result = cardy_isomorphic(lf, gauged, canonical, np.random.default_rng(0), TOL)
    assert result
    assert result.square_residual < TOL


def test_different_closed_carriers_are_not_isomorphic(engines):
    lf = engines("fibonacci").lf
    canonical = canonical_cardy(lf)
    widened = corrupt_cardy(lf, canonical, "added-vacuum")
    result = cardy_isomorphic(lf, canonical, widened)
    assert isinstance(result, NotIsomorphic)
    assert not result
    assert "closed" in result.reason


def test_load_algebra_documents(engines):
    lf = engines("fibonacci").lf
    assert load_algebra(lf, algebra_path("trivial")).name == "trivial"
    endo = load_algebra(lf, algebra_path("fibonacci_endomorphism"))
    assert endo.name == "End(1+tau)"
    assert endo.carrier == Obj.sum_of([(), (1,), (1,), (1, 1)])
    transported = load_algebra(lf, algebra_path("transport_unit"))
    assert transported.commutative and transported.center is not None


def test_load_cardy_documents(engines):
    lf = engines("fibonacci").lf
    assert failing(verify_cardy(lf, load_cardy(lf, algebra_path("canonical_cardy")), TOL)) == []
    gauged = load_cardy(lf, algebra_path("gauged_cardy"))
    assert gauged.name == "canonical (gauged)"


def test_load_inputs_sorts_by_schema(engines):
    lf = engines("fibonacci").lf
    cardy, algebras = load_inputs(lf, [algebra_path("trivial"), algebra_path("canonical_cardy")])
    assert [c.name for c in cardy] == ["canonical"]
    assert [a.name for a in algebras] == ["trivial"]
    with pytest.raises(ParseError):
        load_inputs(lf, [correlator_path("canonical")])


def test_schema_mismatch(engines):
    lf = engines("fibonacci").lf
    with pytest.raises(ParseError):
        load_algebra(lf, algebra_path("canonical_cardy"))
    with pytest.raises(ParseError):
        load_cardy(lf, algebra_path("trivial"))


@pytest.mark.parametrize("spec", [
    {"construction": "bogus"},
    {"construction": "explicit", "carrier": [[]]},
    {"construction": "explicit", "carrier": "tau"},
    {"construction": "endomorphism", "object": [["phi"]]},
    {
        "construction": "explicit", "carrier": [[]],
        "m": {"1": [[0, 0, 1.0]]}, "eta": {}, "delta": {}, "eps": {},
    },
    {
        "construction": "explicit", "carrier": [[]],
        "m": {"1": [[3, 0, 1.0, 0.0]]}, "eta": {}, "delta": {}, "eps": {},
    },
])
def test_malformed_algebra_entries(spec, engines):
    with pytest.raises(ParseError):
        build_algebra(engines("fibonacci").lf, spec)


def test_read_document_errors(tmp_path):
    with pytest.raises(ParseError):
        read_document(str(tmp_path / "missing.json"), None)
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(ParseError):
        read_document(str(broken), None)
    listed = tmp_path / "list.json"
    listed.write_text("[1, 2]", encoding="utf-8")
    with pytest.raises(ParseError):
        read_document(str(listed), None)


def test_explicit_algebra_document(engines):
    lf = engines("fibonacci").lf
    alg = endomorphism_frobenius(lf.d, Obj.unit() + Obj.simple(1))
    rebuilt = build_algebra(lf, dump_algebra(lf, alg))
    assert rebuilt.m.distance(alg.m) < 1e-12
    assert rebuilt.delta.distance(alg.delta) < 1e-12


def test_saved_cardy_algebra_loads_back(engines, tmp_path):
    lf = engines("fibonacci").lf
    canonical = canonical_cardy(lf)
    path = str(tmp_path / "cardy.json")
    write_document(path, dump_cardy(lf, canonical))
    loaded = load_cardy(lf, path)
    assert loaded.h_cl.center == canonical.h_cl.center
    assert loaded.iota.distance(canonical.iota) < 1e-12
    assert failing(verify_cardy(lf, loaded, TOL)) == []
