"""Graphical calculus: category laws, dualities, braiding, twist and traces"""

import itertools

import numpy as np
import pytest

from conftest import MODULAR
from src.diagram.objects import Obj, tensor_all
from src.errors import NotEndomorphism, ShapeMismatch


def short_words(rank, max_length=2):
    return [Obj.word(*w) for n in range(1, max_length + 1) for w in itertools.product(range(rank), repeat=n)]


def test_tensor_orders_summands():
    a = Obj.sum_of([(0,), (1,)])
    b = Obj.sum_of([(1,), (0, 1)])
    assert a.tensor(b).summands == ((0, 1), (0, 0, 1), (1, 1), (1, 0, 1))
    assert tensor_all([]) == Obj.unit()
    assert Obj.simple(0) != Obj.unit()


def test_fibonacci_hom_dimensions(engines):
    d = engines("fibonacci").d
    tt = Obj.word(1, 1)
    assert d.hom_dim(tt, tt) == 2
    assert d.hom_dim(Obj.unit(), tt) == 1
    assert d.hom_dim(Obj.unit(), Obj.word(1, 1, 1)) == 1
    assert d.dim(Obj.word(1, 1, 1), 1) == 2


@pytest.mark.parametrize("name", MODULAR)
def test_composition_and_interchange(name, engines, np_random):
    d = engines(name).d
    words = short_words(d.n)
    for _ in range(5):
        a, b, c, e = (words[k] for k in np_random.integers(0, len(words), size=4))
        f, g = d.random_morphism(a, b, np_random), d.random_morphism(c, e, np_random)
        h, k = d.random_morphism(b, a, np_random), d.random_morphism(e, c, np_random)
        assert (d.tensor(h, k) @ d.tensor(f, g)).distance(d.tensor(h @ f, k @ g)) < 1e-9
        assert (d.identity(b) @ f).distance(f) < 1e-12


def test_composition_shape_mismatch(engines):
    d = engines("fibonacci").d
    with pytest.raises(ShapeMismatch):
        d.identity(Obj.simple(1)) @ d.identity(Obj.word(1, 1))


@pytest.mark.parametrize("name", MODULAR)
def test_zigzag(name, engines):
    d = engines(name).d
    for a in short_words(d.n) + [Obj.simple(0) + Obj.simple(d.n - 1)]:
        ad = d.dual_obj(a)
        snake = d.tensor(d.identity(a), d.ev(a)) @ d.tensor(d.coev(a), d.identity(a))
        other = d.tensor(d.ev(a), d.identity(ad)) @ d.tensor(d.identity(ad), d.coev(a))
        assert snake.distance(d.identity(a)) < 1e-9
        assert other.distance(d.identity(ad)) < 1e-9


@pytest.mark.parametrize("name", MODULAR)
def test_braiding_naturality_and_hexagon(name, engines, np_random):
    d = engines(name).d
    letters = [Obj.simple(k) for k in range(d.n)]
    for a, b, c in itertools.product(letters, repeat=3):
        lhs = d.braiding(a, b.tensor(c))
        rhs = d.tensor(d.identity(b), d.braiding(a, c)) @ d.tensor(d.braiding(a, b), d.identity(c))
        assert lhs.distance(rhs) < 1e-9
    words = short_words(d.n)
    for _ in range(5):
        a, b, c, e = (words[k] for k in np_random.integers(0, len(words), size=4))
        f, g = d.random_morphism(a, b, np_random), d.random_morphism(c, e, np_random)
        assert (d.braiding(b, e) @ d.tensor(f, g)).distance(d.tensor(g, f) @ d.braiding(a, c)) < 1e-9


@pytest.mark.parametrize("name", MODULAR)
def test_braiding_inverse(name, engines):
    d = engines(name).d
    for a, b in itertools.product(short_words(d.n, 1), repeat=2):
        assert (d.braiding(b, a) @ d.braiding_inv(a, b)).distance(d.identity(a.tensor(b))) < 1e-9
        assert (d.braiding_inv(b, a) @ d.braiding(a, b)).distance(d.identity(a.tensor(b))) < 1e-9


@pytest.mark.parametrize("name", MODULAR)
def test_ribbon_twist(name, engines):
    d = engines(name).d
    for a, b in itertools.product(short_words(d.n, 1), repeat=2):
        lhs = d.twist(a.tensor(b))
        rhs = d.braiding(b, a) @ d.braiding(a, b) @ d.tensor(d.twist(a), d.twist(b))
        assert lhs.distance(rhs) < 1e-9


@pytest.mark.parametrize("name", MODULAR)
def test_quantum_dimensions_as_traces(name, engines):
    eng = engines(name)
    for a in range(eng.cat.rank):
        ida = eng.d.identity(Obj.simple(a))
        assert eng.d.trace(ida) == pytest.approx(eng.cat.dims[a])
        assert eng.d.trace_right(ida) == pytest.approx(eng.cat.dims[a])
        assert eng.d.trace_left(ida) == pytest.approx(eng.cat.dims_left[a])


def test_trace_needs_an_endomorphism(engines):
    d = engines("fibonacci").d
    with pytest.raises(NotEndomorphism):
        d.trace(d.coev(Obj.simple(1)))


@pytest.mark.parametrize("name", MODULAR)
def test_trace_cyclic_and_partial(name, engines, np_random):
    d = engines(name).d
    a, b, x = Obj.simple(d.n - 1), Obj.word(d.n - 1, d.n - 1), Obj.simple(d.n - 1)
    f, g = d.random_morphism(a, b, np_random), d.random_morphism(b, a, np_random)
    assert d.trace(g @ f) == pytest.approx(d.trace(f @ g))
    h = d.random_morphism(a.tensor(x), a.tensor(x), np_random)
    assert d.trace(d.partial_trace(h, a, a, x)) == pytest.approx(d.trace(h))


@pytest.mark.parametrize("name", MODULAR)
def test_completeness(name, engines):
    d = engines(name).d
    for n in (1, 2, 3):
        for w in itertools.product(range(d.n), repeat=n):
            assert d.completeness_residual(Obj.word(*w)) < 1e-9


def test_rotating_coev_gives_left_coevaluation(engines):
    d = engines("fibonacci").d
    tau = Obj.simple(1)
    rotated = d.rotate_coupon(d.coev(tau), tau, d.dual_obj(tau))
    assert rotated.distance(d.coev_tilde(tau)) < 1e-9


@pytest.mark.parametrize("name", MODULAR)
def test_two_rotations_return_the_coupon(name, engines, np_random):
    d = engines(name).d
    x, y = Obj.simple(d.n - 1), Obj.word(d.n - 1, d.n - 1)
    phi = d.random_morphism(Obj.unit(), x.tensor(y), np_random)
    cycle = d.rotate_coupon(d.rotate_coupon(phi, x, y), y, x)
    assert cycle.distance(phi) < 1e-9


def test_summand_inclusion_and_projection(engines):
    d = engines("ising").d
    obj = Obj.simple(1) + Obj.word(1, 1) + Obj.unit()
    for k in range(len(obj)):
        assert (d.projection(obj, k) @ d.inclusion(obj, k)).distance(d.identity(obj.summand(k))) < 1e-12
    total = d.zero(obj, obj)
    for k in range(len(obj)):
        total = total + d.inclusion(obj, k) @ d.projection(obj, k)
    assert total.distance(d.identity(obj)) < 1e-12


def test_scalar_of_a_loop(engines):
    eng = engines("fibonacci")
    d, tau = eng.d, Obj.simple(1)
    loop = d.ev_tilde(tau) @ d.coev(tau)
    assert loop.scalar() == pytest.approx(eng.cat.dims[1])
    with pytest.raises(ShapeMismatch):
        d.identity(tau).scalar()
