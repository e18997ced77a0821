"""Frobenius algebras in C and in Z(C)
Construction, verification, transport along L and the Frobenius adjoint
"""

import logging
from dataclasses import dataclass, replace
from typing import Optional

from src.center.center import CenterObject
from src.diagram.morphism import Morphism
from src.diagram.objects import Obj
from src.errors import ShapeMismatch
from src.mtc_core.axioms import AxiomCheck

logger = logging.getLogger("mtc_engine.frobenius")


@dataclass(frozen=True, eq=False)
class FrobeniusAlgebra:
    """(A, m, η, Δ, ε); center is set for algebras living in Z(C)"""
    name: str
    carrier: Obj
    m: Morphism
    eta: Morphism
    delta: Morphism
    eps: Morphism
    center: Optional[CenterObject] = None
    symmetric: bool = False
    commutative: bool = False

    def __post_init__(self):
        a, aa, unit = self.carrier, self.carrier.tensor(self.carrier), Obj.unit()
        expected = {
            "m": (aa, a),
            "eta": (unit, a),
            "delta": (a, aa),
            "eps": (a, unit),
        }
        for name, (source, target) in expected.items():
            f = getattr(self, name)
            if f.source != source or f.target != target:
                raise ShapeMismatch(f"{self.name}: {name} has shape {f.source.summands} -> {f.target.summands}")
        if self.center is not None and self.center.carrier != a:
            raise ShapeMismatch(f"{self.name}: centre carrier differs from the algebra carrier")


def trivial_algebra(d, in_center=False):
    """The unit object with every structure map the identity"""
    one = d.identity(Obj.unit())
    return FrobeniusAlgebra(
        name="trivial",
        carrier=Obj.unit(),
        m=one, eta=one, delta=one, eps=one,
        center=CenterObject.unit() if in_center else None,
        symmetric=True,
        commutative=True,
    )


def endomorphism_frobenius(d, x, name=None):
    """X ⊗ X* with m = id⊗ev⊗id, η = coev, Δ = id⊗coev~⊗id, ε = ev~"""
    xd = d.dual_obj(x)
    idx, idxd = d.identity(x), d.identity(xd)
    return FrobeniusAlgebra(
        name=name or f"End({x.summands})",
        carrier=x.tensor(xd),
        m=d.tensor(d.tensor(idx, d.ev(x)), idxd),
        eta=d.coev(x),
        delta=d.tensor(d.tensor(idx, d.coev_tilde(x)), idxd),
        eps=d.ev_tilde(x),
        symmetric=True,
    )


def conjugate(d, alg, forward, backward, center=None, name=None):
    """Structure moved along forward: A -> B with backward: B -> A"""
    if forward.source != alg.carrier or backward.target != alg.carrier:
        raise ShapeMismatch("conjugate: maps do not start and end at the carrier")
    if center is None and alg.center is not None and forward.target == alg.carrier:
        center = alg.center
    return replace(
        alg,
        name=name or alg.name,
        carrier=forward.target,
        m=forward @ alg.m @ d.tensor(backward, backward),
        eta=forward @ alg.eta,
        delta=d.tensor(forward, forward) @ alg.delta @ backward,
        eps=alg.eps @ backward,
        center=center,
    )


def block_embedding(d, part, whole, offset=0):
    """Inclusion part -> whole and projection whole -> part for summands starting at offset"""
    inc, pro = d.zero(part, whole), d.zero(whole, part)
    for k in range(len(part)):
        inc = inc + d.inclusion(whole, offset + k) @ d.projection(part, k)
        pro = pro + d.inclusion(part, k) @ d.projection(whole, offset + k)
    return inc, pro


def direct_sum(d, first, second, name=None):
    """first ⊕ second with block-diagonal structure maps"""
    whole = first.carrier + second.carrier
    center = None
    if first.center is not None and second.center is not None:
        center = first.center + second.center
    inc1, pro1 = block_embedding(d, first.carrier, whole)
    inc2, pro2 = block_embedding(d, second.carrier, whole, len(first.carrier))
    return FrobeniusAlgebra(
        name=name or f"{first.name} ⊕ {second.name}",
        carrier=whole,
        m=inc1 @ first.m @ d.tensor(pro1, pro1) + inc2 @ second.m @ d.tensor(pro2, pro2),
        eta=inc1 @ first.eta + inc2 @ second.eta,
        delta=d.tensor(inc1, inc1) @ first.delta @ pro1 + d.tensor(inc2, inc2) @ second.delta @ pro2,
        eps=first.eps @ pro1 + second.eps @ pro2,
        center=center,
        symmetric=first.symmetric and second.symmetric,
        commutative=first.commutative and second.commutative,
    )


def transport_L(lf, alg, commutative=False):
    """L(A) with m = L(m)∘φ, η = L(η)∘φ_1, Δ = ψ∘L(Δ), ε = ψ_1∘L(ε)"""
    a = alg.carrier
    return FrobeniusAlgebra(
        name=f"L({alg.name})",
        carrier=lf.obj(a).carrier,
        m=lf.mor(alg.m) @ lf.phi(a, a),
        eta=lf.mor(alg.eta) @ lf.phi_unit(),
        delta=lf.psi(a, a) @ lf.mor(alg.delta),
        eps=lf.psi_unit() @ lf.mor(alg.eps),
        center=lf.obj(a),
        symmetric=alg.symmetric,
        commutative=commutative,
    )


def frobenius_adjoint(d, f, a, b):
    """f†: B -> A as ((ε_B m_B) ⊗ id_A) ∘ (id_B ⊗ f ⊗ id_A) ∘ (id_B ⊗ Δ_A η_A)"""
    if f.source != a.carrier or f.target != b.carrier:
        raise ShapeMismatch("frobenius_adjoint: f is not a map between the carriers")
    ida, idb = d.identity(a.carrier), d.identity(b.carrier)
    return d.compose(
        d.tensor(b.eps @ b.m, ida),
        d.tensor(d.tensor(idb, f), ida),
        d.tensor(idb, a.delta @ a.eta),
    )


def symmetry_sides(d, alg):
    """The two maps A -> A* induced by the pairing ε∘m"""
    a = alg.carrier
    form = alg.eps @ alg.m
    ad = d.dual_obj(a)
    lhs = d.tensor(form, d.identity(ad)) @ d.tensor(d.identity(a), d.coev(a))
    rhs = d.tensor(d.identity(ad), form) @ d.tensor(d.coev_tilde(a), d.identity(a))
    return lhs, rhs


def algebra_braiding(lf, alg):
    """Braiding of the carrier with itself in the ambient category"""
    if alg.center is not None:
        return lf.center.braiding(alg.center, alg.center)
    return lf.d.braiding(alg.carrier, alg.carrier)


def verify_frobenius(lf, alg, tol=None):
    """Residuals of the Frobenius algebra axioms, plus the flagged extras"""
    d = lf.d
    tol = d.cat.tol if tol is None else tol
    a = alg.carrier
    ida = d.identity(a)
    m, eta, delta, eps = alg.m, alg.eta, alg.delta, alg.eps
    checks = []

    def record(name, lhs, rhs):
        residual = lhs.distance(rhs)
        checks.append(AxiomCheck(f"{alg.name}: {name}", residual, residual < tol, f"residual {residual:.3e}"))

    record("associativity", m @ d.tensor(m, ida), m @ d.tensor(ida, m))
    record("left unit", m @ d.tensor(eta, ida), ida)
    record("right unit", m @ d.tensor(ida, eta), ida)
    record("coassociativity", d.tensor(delta, ida) @ delta, d.tensor(ida, delta) @ delta)
    record("left counit", d.tensor(eps, ida) @ delta, ida)
    record("right counit", d.tensor(ida, eps) @ delta, ida)
    record("frobenius left", d.tensor(ida, m) @ d.tensor(delta, ida), delta @ m)
    record("frobenius right", d.tensor(m, ida) @ d.tensor(ida, delta), delta @ m)
    if alg.symmetric:
        record("symmetry", *symmetry_sides(d, alg))
    if alg.commutative:
        c = algebra_braiding(lf, alg)
        record("commutativity", m @ c, m)
        record("cocommutativity", c @ delta, delta)
    if alg.center is not None:
        x, unit = alg.center, CenterObject.unit()
        xx = x.tensor(x)
        residual = max(
            lf.center.centrality_residual(m, xx, x),
            lf.center.centrality_residual(eta, unit, x),
            lf.center.centrality_residual(delta, x, xx),
            lf.center.centrality_residual(eps, x, unit),
        )
        checks.append(AxiomCheck(f"{alg.name}: centrality", residual, residual < tol, f"residual {residual:.3e}"))
    failed = [c.name for c in checks if not c.passed]
    if failed:
        logger.debug(f"{alg.name}: failing axioms {failed}")
    return checks


def corrupt_multiplication(alg, amount):
    """Copy of alg with the leading channel-0 entry of m shifted by amount

    For carriers whose first summand is the unit pair this is the product of
    the unit component with itself.
    """
    blocks = [b.copy() for b in alg.m.blocks]
    for block in blocks:
        if block.size:
            block[0, 0] += amount
            break
    m = Morphism(alg.m.source, alg.m.target, tuple(blocks))
    return replace(alg, name=f"{alg.name} (corrupted m)", m=m)
