"""Sewing relations, extraction of Cardy algebras, gluing and string-net dimensions"""

import itertools

import numpy as np
import pytest

from conftest import correlator_path
from src.algebra.cardy import canonical_cardy, cardy_isomorphic, verify_cardy
from src.center.center import CenterObject, center_embed
from src.diagram.objects import Obj
from src.errors import NotEndomorphism, NotIdempotent, ParseError, RelationFailure, ShapeMismatch, UnknownRelation
from src.sewing.correlators import (
    CorrelatorSet,
    GeneratorTag,
    build_correlators,
    canonical_correlators,
    corrupt_correlators,
    inflate,
    load_correlators,
)
from src.sewing.dimensions import stringnet_dim, stringnet_dim_bruteforce
from src.sewing.extraction import extract_cardy, retract_report, split_center_idempotent, split_idempotent
from src.sewing.gluing import GluingSpec, glue_correlators, glue_slot, z_gluing_residual
from src.sewing.relations import (
    RELATION_COUNT,
    RELATION_NOTES,
    check_all,
    check_relation,
    failing_relations,
    relation_id,
)

TOL = 1e-9


def canonical(lf):
    return canonical_correlators(lf, canonical_cardy(lf))


# Relations

@pytest.mark.parametrize("rid, expected", [(7, "R7"), ("7", "R7"), ("r7", "R7"), (" R32 ", "R32"), ("R1", "R1")])
def test_relation_id(rid, expected):
    assert relation_id(rid) == expected


@pytest.mark.parametrize("rid", [0, 33, "S1", "R", "seven"])
def test_unknown_relation(rid):
    with pytest.raises(UnknownRelation):
        relation_id(rid)


def test_every_relation_has_a_note():
    assert sorted(RELATION_NOTES, key=lambda r: int(r[1:])) == [f"R{k}" for k in range(1, RELATION_COUNT + 1)]


@pytest.mark.parametrize("name", ["vect", "fibonacci"])
def test_canonical_correlators_solve_every_relation(name, engines):
    lf = engines(name).lf
    results = check_all(lf, canonical(lf), TOL)
    assert [r.relation for r in results] == [f"R{k}" for k in range(1, RELATION_COUNT + 1)]
    assert failing_relations(results) == []


@pytest.mark.slow
def test_canonical_ising_correlators(engines):
    lf = engines("ising").lf
    assert failing_relations(check_all(lf, canonical(lf), TOL)) == []


def test_check_relation_by_name(engines):
    lf = engines("fibonacci").lf
    result = check_relation(lf, "r31", canonical(lf), TOL)
    assert result.relation == "R31"
    assert result.passed
    assert result.to_dict()["note"] == RELATION_NOTES["R31"]


def test_s_move_is_an_equation_between_correlator_composites(engines):
    lf = engines("fibonacci").lf
    result = check_relation(lf, "R32", canonical(lf), TOL)
    assert result.passed
    assert result.lhs is not None and result.rhs is not None
    assert result.lhs.source == Obj.unit()
    assert result.lhs.target == result.rhs.target


def test_s_move_fails_without_the_closed_structure(engines):
    lf = engines("fibonacci").lf
    corr = canonical(lf)
    for tag in (GeneratorTag.C_M, GeneratorTag.C_DELTA, GeneratorTag.C_ETA, GeneratorTag.C_EPS,
                GeneratorTag.I, GeneratorTag.I_DAGGER):
        corr = corr.replaced(tag, 0 * corr[tag], name="zeroed")
    result = check_relation(lf, "R32", corr, TOL)
    assert not result.passed
    assert result.residual > 0.5


@pytest.mark.parametrize("tag", [GeneratorTag.C_M, GeneratorTag.C_DELTA])
def test_s_move_sees_a_perturbed_closed_correlator(tag, engines, np_random):
    lf = engines("fibonacci").lf
    corr = canonical(lf)
    f = corr[tag]
    noisy = corr.replaced(tag, f + 0.1 * lf.d.random_morphism(f.source, f.target, np_random))
    assert not check_relation(lf, "R32", noisy, TOL).passed


def test_rescaled_i_dagger_breaks_its_adjoint_relation(engines):
    lf = engines("fibonacci").lf
    corr = canonical(lf)
    scaled = corr.replaced(GeneratorTag.I_DAGGER, 1.5 * corr[GeneratorTag.I_DAGGER])
    result = check_relation(lf, "R28", scaled, TOL)
    assert not result.passed
    assert result.residual >= 1e-3
    assert check_relation(lf, "R27", scaled, TOL).passed


@pytest.mark.parametrize("name, fixture", [("vect", "inflated"), ("fibonacci", "inflated"),
                                           ("fibonacci", "fibonacci_inflated")])
def test_inflated_correlators_solve_every_relation(name, fixture, engines):
    lf = engines(name).lf
    corr = load_correlators(lf, correlator_path(fixture))
    assert not corr.props_trivial(lf.d, TOL)
    assert failing_relations(check_all(lf, corr, TOL)) == []


def test_scaled_open_product_breaks_the_unit_law(engines):
    lf = engines("fibonacci").lf
    corr = load_correlators(lf, correlator_path("non_solution"))
    failing = failing_relations(check_all(lf, corr, TOL))
    assert "R1" in failing and "R2" in failing


def test_off_channel_entry_breaks_the_open_closed_relations(engines):
    lf = engines("fibonacci").lf
    corr = load_correlators(lf, correlator_path("fibonacci_off_channel"))
    failing = failing_relations(check_all(lf, corr, TOL))
    assert {"R27", "R31"} & set(failing)


def test_corrupt_correlators_rejects_unknown_kinds(engines):
    lf = engines("vect").lf
    with pytest.raises(ValueError):
        corrupt_correlators(lf, canonical(lf), "bogus")
    doc = {"cardy": {"construction": "canonical"}, "corruption": {"kind": "bogus"}}
    with pytest.raises(ParseError):
        build_correlators(lf, doc)


def test_inflation_needs_closed_junk(engines):
    lf = engines("vect").lf
    with pytest.raises(ParseError):
        build_correlators(lf, {"inflation": {"seed": 1, "open_junk": [[]]}})


def test_inflation_needs_identity_propagators(engines):
    lf = engines("fibonacci").lf
    corr = load_correlators(lf, correlator_path("inflated"))
    with pytest.raises(ShapeMismatch):
        inflate(lf, corr, Obj.unit(), center_embed(0, 0), np.random.default_rng(0))


def test_correlator_set_needs_every_generator(engines):
    lf = engines("vect").lf
    corr = canonical(lf)
    maps = {tag: f for tag, f in corr.maps.items() if tag is not GeneratorTag.I_DAGGER}
    with pytest.raises(ShapeMismatch):
        CorrelatorSet("partial", corr.open_obj, corr.closed, corr.lifted, maps)


def test_correlators_with_wrong_signature(engines):
    lf = engines("fibonacci").lf
    corr = canonical(lf)
    with pytest.raises(ShapeMismatch):
        corr.replaced(GeneratorTag.O_M, corr[GeneratorTag.C_M])


# Retracts

def test_split_identity(engines):
    d = engines("fibonacci").d
    obj = Obj.simple(1) + Obj.word(1, 1)
    ret = split_idempotent(d, d.identity(obj))
    assert ret.identity
    assert ret.image == obj


def test_split_summand_projector(engines):
    d = engines("fibonacci").d
    obj = Obj.simple(1) + Obj.word(1, 1)
    p = d.inclusion(obj, 1) @ d.projection(obj, 1)
    ret = split_idempotent(d, p, TOL)
    assert not ret.identity
    assert ret.section_residual(d) < TOL
    assert ret.split_residual(p) < TOL
    assert [d.dim(ret.image, c) for c in range(d.n)] == [1, 1]


def test_split_rejects_non_idempotents(engines):
    d = engines("fibonacci").d
    tau = Obj.simple(1)
    with pytest.raises(NotIdempotent):
        split_idempotent(d, d.identity(tau) * 2.0)
    with pytest.raises(NotEndomorphism):
        split_idempotent(d, d.zero(tau, Obj.word(1, 1)))


def test_split_center_idempotent(engines):
    lf = engines("fibonacci").lf
    x = center_embed(0, 0) + center_embed(1, 1)
    p = lf.d.inclusion(x.carrier, 1) @ lf.d.projection(x.carrier, 1)
    ret = split_center_idempotent(lf, x, p, TOL)
    assert ret.image.carrier == Obj.word(1, 1)
    assert ret.section_residual(lf.d) < TOL
    assert ret.split_residual(p) < TOL


# Extraction

def test_extract_from_canonical_correlators(engines):
    lf = engines("fibonacci").lf
    cd = canonical_cardy(lf)
    corr = canonical_correlators(lf, cd)
    assert all(row["identity"] for row in retract_report(lf, corr, TOL))
    extracted = extract_cardy(lf, corr, TOL)
    assert extracted.h_cl.carrier == cd.h_cl.carrier
    assert cardy_isomorphic(lf, extracted, cd, np.random.default_rng(0), TOL)


@pytest.mark.parametrize("name", ["vect", "fibonacci"])
def test_extract_from_inflated_correlators(name, engines):
    lf = engines(name).lf
    corr = load_correlators(lf, correlator_path("inflated"))
    rows = retract_report(lf, corr, TOL)
    assert not any(row["identity"] for row in rows)
    assert all(row["section_residual"] < TOL and row["split_residual"] < TOL for row in rows)
    extracted = extract_cardy(lf, corr, TOL)
    assert [c.name for c in verify_cardy(lf, extracted, TOL) if not c.passed] == []
    result = cardy_isomorphic(lf, extracted, canonical_cardy(lf), np.random.default_rng(0), TOL)
    assert result
    assert result.square_residual < TOL


def test_retract_choices_give_isomorphic_algebras(engines):
    lf = engines("fibonacci").lf
    corr = load_correlators(lf, correlator_path("fibonacci_inflated"))
    first = extract_cardy(lf, corr, TOL, rng=np.random.default_rng(1))
    second = extract_cardy(lf, corr, TOL, rng=np.random.default_rng(2), verify=False)
    assert cardy_isomorphic(lf, first, second, np.random.default_rng(0), TOL)


def test_extract_refuses_non_solutions(engines):
    lf = engines("fibonacci").lf
    corr = load_correlators(lf, correlator_path("non_solution"))
    with pytest.raises(RelationFailure) as info:
        extract_cardy(lf, corr, TOL)
    assert "R1" in info.value.failing


# Gluing

def test_gluing_commutes_with_Z(engines, np_random):
    eng = engines("fibonacci")
    d, lf = eng.d, eng.lf
    tau = Obj.simple(1)
    spec = GluingSpec(glued=tau, head=[tau], tail=[tau])
    f = d.random_morphism(Obj.unit(), tau.tensor(tau), np_random)
    g = d.random_morphism(Obj.unit(), d.dual_obj(tau).tensor(tau), np_random)
    assert z_gluing_residual(lf, f, g, spec) < TOL


def test_gluing_rejects_mismatched_coupons(engines, np_random):
    eng = engines("fibonacci")
    d, lf = eng.d, eng.lf
    tau = Obj.simple(1)
    spec = GluingSpec(glued=tau, head=[tau], tail=[tau])
    f = d.random_morphism(Obj.unit(), tau.tensor(tau), np_random)
    with pytest.raises(ShapeMismatch):
        glue_correlators(lf, f, d.identity(tau), spec)
    with pytest.raises(ShapeMismatch):
        z_gluing_residual(lf, f, f, GluingSpec(glued=tau))


def test_glue_slot_composes_along_a_boundary(engines, np_random):
    d = engines("fibonacci").d
    tau = Obj.simple(1)
    inner = d.random_morphism(tau, tau.tensor(tau), np_random)
    outer = d.random_morphism(tau.tensor(tau).tensor(tau), tau, np_random)
    glued = glue_slot(d, outer, inner, Obj.unit(), tau)
    assert glued.distance(outer @ d.tensor(inner, d.identity(tau))) < TOL
    with pytest.raises(ShapeMismatch):
        glue_slot(d, outer, inner, tau, tau)


# String-net dimensions

@pytest.mark.parametrize("name, genus, pairs, expected", [
    ("fibonacci", 0, [], 1),
    ("fibonacci", 1, [], 4),
    ("fibonacci", 1, [(0, 0)], 4),
    ("fibonacci", 0, [(1, 1)], 0),
    ("fibonacci", 0, [(1, 1), (1, 1)], 1),
    ("vect", 2, [], 1),
    ("ising", 1, [], 9),
])
def test_stringnet_dimension(name, genus, pairs, expected, engines):
    cat = engines(name).cat
    assert stringnet_dim(cat, genus, [center_embed(i, j) for i, j in pairs]) == expected


def test_stringnet_dim_counts_central_vectors_on_an_L_unit_boundary(engines):
    eng = engines("fibonacci")
    assert stringnet_dim(eng.cat, 0, [eng.lf.obj(Obj.unit())]) == 1
    assert eng.center.hom_z_dim(CenterObject.unit(), eng.lf.obj(Obj.unit())) == 1


def test_stringnet_dimension_matches_tree_count(engines):
    eng = engines("fibonacci")
    simples = [center_embed(i, j) for i, j in eng.center.simples()]
    for genus in (0, 1):
        for boundary in itertools.product(simples, repeat=2):
            assert stringnet_dim(eng.cat, genus, boundary) == stringnet_dim_bruteforce(eng.d, genus, boundary)


def test_negative_genus(engines):
    with pytest.raises(ValueError):
        stringnet_dim(engines("vect").cat, -1, [])
