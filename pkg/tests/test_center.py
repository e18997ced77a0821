"""Drinfeld center, the functor L and the block maps Z and Y"""

import itertools

import numpy as np
import pytest

from conftest import MODULAR
from src.center.block_maps import coupon_basis, map_Y, map_Z, y_after_z_residual, z_membership_residual
from src.center.center import CenterObject, center_embed
from src.diagram.objects import Obj, tensor_all
from src.errors import ShapeMismatch


def test_center_embed_levels():
    x = center_embed(1, 0)
    assert x.carrier == Obj.word(1, 0)
    assert x.levels == ((True, False),)
    assert x.over_under(0) == ((1,), (0,))


def test_levels_must_fit_the_carrier():
    with pytest.raises(ShapeMismatch):
        CenterObject(Obj.word(1, 1), ((True,),))


@pytest.mark.parametrize("name", MODULAR)
def test_half_braiding_hexagon(name, engines):
    center = engines(name).center
    letters = [Obj.simple(k) for k in range(center.n)]
    for i, j in center.simples():
        x = center_embed(i, j)
        for b, c in itertools.product(letters, repeat=2):
            assert center.hexagon_residual(x, b, c) < 1e-9


@pytest.mark.parametrize("name", MODULAR)
def test_half_braiding_naturality_and_inverse(name, engines, np_random):
    eng = engines(name)
    d, center = eng.d, eng.center
    top = Obj.simple(d.n - 1)
    for i, j in center.simples():
        x = center_embed(i, j)
        f = d.random_morphism(top.tensor(top), top, np_random)
        assert center.naturality_residual(x, f) < 1e-9
        inverse = center.half_braiding_inv(x, top) @ center.half_braiding(x, top)
        assert inverse.distance(d.identity(x.carrier.tensor(top))) < 1e-9
        assert center.centrality_residual(d.identity(x.carrier), x, x) < 1e-9


def test_identity_is_the_only_central_endomorphism_of_a_simple(engines):
    center = engines("fibonacci").center
    assert center.hom_z_dim(center_embed(1, 1), center_embed(1, 1)) == 1
    assert center.hom_z_dim(center_embed(1, 0), center_embed(0, 1)) == 0


def test_L_of_unit(engines):
    lf = engines("fibonacci").lf
    l1 = lf.obj(Obj.unit())
    assert l1.carrier.summands == ((0, 0), (1, 1))
    assert l1.levels == ((True, False), (True, False))


@pytest.mark.parametrize("name", MODULAR)
def test_L_multiplicities(name, engines):
    eng = engines(name)
    l1 = eng.lf.obj(Obj.unit())
    for i, j in eng.center.simples():
        expected = 1.0 if j == eng.cat.dual[i] else 0.0
        assert eng.center.multiplicity(i, j, l1) == pytest.approx(expected, abs=1e-9)


def test_L_functoriality(engines, np_random):
    eng = engines("fibonacci")
    d, lf = eng.d, eng.lf
    a, b = Obj.simple(1), Obj.word(1, 1)
    f, g = d.random_morphism(a, b, np_random), d.random_morphism(b, a, np_random)
    assert lf.mor(g @ f).distance(lf.mor(g) @ lf.mor(f)) < 1e-9
    assert lf.mor(d.identity(b)).distance(d.identity(lf.obj(b).carrier)) < 1e-12
    assert lf.faithfulness_ratio(f) == pytest.approx(1.0)


@pytest.mark.parametrize("name", MODULAR)
def test_lax_colax_coherence(name, engines):
    eng = engines(name)
    lf = eng.lf
    probes = [Obj.unit(), Obj.simple(eng.cat.rank - 1)]
    for a, b, c in itertools.product(probes, repeat=3):
        assert lf.associativity_residual(a, b, c) < 1e-9
        assert lf.coassociativity_residual(a, b, c) < 1e-9
        assert lf.frobenius_residual(a, b, c) < 1e-9
    for a in probes:
        assert lf.unit_residual(a) < 1e-9
        assert lf.zigzag_residual(a) < 1e-9
        for b in probes:
            assert lf.separability_residual(a, b) < 1e-9


def test_structure_maps_are_natural(engines, np_random):
    eng = engines("fibonacci")
    d, lf = eng.d, eng.lf
    tau = Obj.simple(1)
    f = d.random_morphism(tau, tau.tensor(tau), np_random)
    g = d.random_morphism(Obj.unit(), tau.tensor(tau), np_random)
    assert lf.naturality_residual(f, g) < 1e-9


def test_psi_phi_is_not_the_identity(engines):
    eng = engines("fibonacci")
    d, lf = eng.d, eng.lf
    unit = Obj.unit()
    l1 = lf.obj(unit).carrier
    assert (lf.psi(unit, unit) @ lf.phi(unit, unit)).distance(d.identity(l1.tensor(l1))) > 1e-3


@pytest.mark.parametrize("name, expected", [("vect", 1.0), ("fibonacci", (5 + np.sqrt(5)) / 2), ("ising", 4.0)])
def test_scalar_loop_is_global_dimension(name, expected, engines):
    lf = engines(name).lf
    assert lf.scalar_loop() == pytest.approx(expected)


def test_phi_unit_lands_in_the_unit_pair_only(engines):
    eng = engines("fibonacci")
    phi1 = eng.lf.phi_unit()
    assert eng.d.component(phi1, 0, 0).norm() > 0.0
    for k in range(1, eng.lf.n):
        assert eng.d.component(phi1, k, 0).norm() == 0.0
    psi1 = eng.lf.psi_unit()
    assert eng.d.component(psi1, 0, 1).norm() == 0.0


def test_loop_of_L_unit(engines):
    eng = engines("fibonacci")
    l1 = eng.lf.obj(Obj.unit()).carrier
    assert eng.d.trace(eng.d.identity(l1)) == pytest.approx(eng.cat.global_dim_sq)


@pytest.mark.parametrize("name", MODULAR)
def test_twist_of_L_unit_is_trivial(name, engines):
    eng = engines(name)
    l1 = eng.lf.obj(Obj.unit())
    assert eng.center.twist(l1).distance(eng.d.identity(l1.carrier)) < 1e-9


def test_twist_of_an_over_letter(engines):
    eng = engines("ising")
    for i in range(eng.cat.rank):
        x = center_embed(i, 0)
        expected = eng.d.identity(x.carrier) * eng.cat.twists[i]
        assert eng.center.twist(x).distance(expected) < 1e-9


def test_projector_on_the_unit_is_the_identity(engines):
    center = engines("fibonacci").center
    assert np.allclose(center.projector_P(CenterObject.unit()), [[1.0]])


@pytest.mark.parametrize("name", MODULAR)
def test_projector_on_L_unit(name, engines):
    eng = engines(name)
    l1 = eng.lf.obj(Obj.unit())
    p = eng.center.projector_P(l1)
    assert np.max(np.abs(p @ p - p)) < 1e-9
    assert np.trace(p).real == pytest.approx(1.0)
    assert eng.center.hom_z_dim(CenterObject.unit(), l1) == 1


def test_projector_commutes_with_L(engines, np_random):
    eng = engines("fibonacci")
    d, lf, center = eng.d, eng.lf, eng.center
    a, b = Obj.simple(1), Obj.word(1, 1)
    f = d.random_morphism(a, b, np_random)
    g = d.random_morphism(Obj.unit(), lf.obj(a).carrier, np_random)
    unit = CenterObject.unit()
    moved = center.project(lf.mor(f) @ g, unit, lf.obj(b))
    assert moved.distance(lf.mor(f) @ center.project(g, unit, lf.obj(a))) < 1e-9


def test_y_after_z_on_the_unit_coupon(engines):
    eng = engines("fibonacci")
    f = eng.d.identity(Obj.unit())
    assert map_Y(eng.lf, map_Z(eng.lf, f, [Obj.unit()]), [Obj.unit()]).distance(f) < 1e-12


@pytest.mark.parametrize("name", MODULAR)
def test_y_after_z_on_full_bases(name, engines):
    eng = engines(name)
    lf = eng.lf
    h = Obj.unit() + Obj.simple(eng.cat.rank - 1)
    hd = eng.d.dual_obj(h)
    for factors in ([h], [h, hd], [h, hd, h]):
        for f in coupon_basis(lf, tensor_all(factors)):
            assert y_after_z_residual(lf, f, factors) < 1e-9


def test_image_of_Z(engines, np_random):
    eng = engines("fibonacci")
    d, lf = eng.d, eng.lf
    tau = Obj.simple(1)
    factors = [tau, tau]
    f = coupon_basis(lf, tau.tensor(tau))[0]
    assert z_membership_residual(lf, map_Z(lf, f, factors), factors) < 1e-9
    target = lf.obj(tau).carrier.tensor(lf.obj(tau).carrier)
    g = d.random_morphism(Obj.unit(), target, np_random)
    assert z_membership_residual(lf, g, factors) > 1e-6


def test_map_Z_rejects_wrong_shapes(engines):
    eng = engines("fibonacci")
    tau = Obj.simple(1)
    with pytest.raises(ShapeMismatch):
        map_Z(eng.lf, eng.d.identity(tau), [tau])
    with pytest.raises(ShapeMismatch):
        map_Z(eng.lf, eng.d.identity(Obj.unit()), [])
