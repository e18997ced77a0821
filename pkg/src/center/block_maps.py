"""Linear maps between C-level coupons and their lifts along L
Z lifts f ∈ hom(1, A_1⊗…⊗A_n) to hom(1, L(A_1)⊗…⊗L(A_n)); Y is its left inverse
"""

import logging

from src.diagram.morphism import Morphism
from src.diagram.objects import Obj, tensor_all
from src.errors import ShapeMismatch

logger = logging.getLogger("mtc_engine.block_maps")


def _lifted(lf, factors):
    return tensor_all([lf.obj(a).carrier for a in factors])


def map_Z(lf, f, factors):
    """(ψ⊗id…)∘…∘ψ_{A_1…A_{n-1},A_n}∘L(f)∘φ_1; the last factor splits off first"""
    factors = list(factors)
    if not factors:
        raise ShapeMismatch("map_Z needs at least one factor")
    if not f.source.is_unit() or f.target != tensor_all(factors):
        raise ShapeMismatch(f"map_Z expects a coupon 1 -> {tensor_all(factors).summands}")
    d = lf.d
    result = lf.mor(f) @ lf.phi_unit()
    for m in range(len(factors) - 1, 0, -1):
        head = tensor_all(factors[:m])
        tail = _lifted(lf, factors[m + 1:])
        result = d.tensor(lf.psi(head, factors[m]), d.identity(tail)) @ result
    return result


def map_Y(lf, g, factors):
    """counit ∘ φ_{A_1…A_{n-1},A_n} ∘ … ∘ (φ_{A_1,A_2} ⊗ id…) ∘ g"""
    factors = list(factors)
    if not factors:
        raise ShapeMismatch("map_Y needs at least one factor")
    if not g.source.is_unit() or g.target != _lifted(lf, factors):
        raise ShapeMismatch("map_Y expects a coupon 1 -> L(A_1)⊗…⊗L(A_n)")
    d = lf.d
    result = g
    for m in range(1, len(factors)):
        head = tensor_all(factors[:m])
        tail = _lifted(lf, factors[m + 1:])
        result = d.tensor(lf.phi(head, factors[m]), d.identity(tail)) @ result
    return lf.counit(tensor_all(factors)) @ result


def y_after_z_residual(lf, f, factors):
    """‖Y(Z(f)) - f‖"""
    return map_Y(lf, map_Z(lf, f, factors), factors).distance(f)


def z_membership_residual(lf, g, factors):
    """‖Z(Y(g)) - g‖; zero exactly when g lies in the image of Z"""
    return map_Z(lf, map_Y(lf, g, factors), factors).distance(g)


def coupon_basis(lf, obj):
    """Tree basis of hom(1, obj)"""
    return [Morphism(Obj.unit(), obj, b.blocks) for b in lf.d.hom_basis(0, obj)]
