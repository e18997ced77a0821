"""Gluing of single-coupon correlators along matching boundaries"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional

from src.center.block_maps import map_Z
from src.center.center import CenterObject
from src.diagram.objects import Obj, tensor_all
from src.errors import ShapeMismatch

logger = logging.getLogger("mtc_engine.gluing")


@dataclass(frozen=True)
class GluingSpec:
    """f: 1 -> head⊗X and g: 1 -> X*⊗tail are glued along X

    closed, when given, is the centre structure of head⊗tail; the glued coupon
    is then projected onto hom_Z(1, head⊗tail).
    """
    glued: Obj
    head: List[Obj] = field(default_factory=list)
    tail: List[Obj] = field(default_factory=list)
    closed: Optional[CenterObject] = None

    def head_obj(self):
        return tensor_all(self.head)

    def tail_obj(self):
        return tensor_all(self.tail)


def glue_slot(d, outer, inner, before, after):
    """outer ∘ (id_before ⊗ inner ⊗ id_after); gluing an outgoing boundary of inner to an incoming one of outer"""
    plugged = d.tensor(d.tensor(d.identity(before), inner), d.identity(after))
    if plugged.target != outer.source:
        raise ShapeMismatch(f"cannot glue: {plugged.target.summands} does not match {outer.source.summands}")
    return outer @ plugged


def glue_correlators(lf, f, g, spec):
    """(id_head ⊗ ev_{X*} ⊗ id_tail) ∘ (f ⊗ g), projected when the new boundary is closed"""
    d = lf.d
    head, tail, x = spec.head_obj(), spec.tail_obj(), spec.glued
    x_dual = d.dual_obj(x)
    if not f.source.is_unit() or f.target != head.tensor(x):
        raise ShapeMismatch(f"first coupon must map 1 -> head⊗X, got {f.target.summands}")
    if not g.source.is_unit() or g.target != x_dual.tensor(tail):
        raise ShapeMismatch(f"second coupon must map 1 -> X*⊗tail, got {g.target.summands}")
    contract = d.tensor(d.tensor(d.identity(head), d.ev(x_dual)), d.identity(tail))
    result = contract @ d.tensor(f, g)
    if spec.closed is not None:
        if spec.closed.carrier != head.tensor(tail):
            raise ShapeMismatch("closed boundary structure does not match head⊗tail")
        result = lf.center.project(result, CenterObject.unit(), spec.closed)
    return result


def glue_lifted(lf, f_hat, g_hat, spec):
    """The same contraction one level up, with ev_{L(X*)} between L(X) and L(X*)"""
    d = lf.d
    head = tensor_all([lf.obj(a).carrier for a in spec.head])
    tail = tensor_all([lf.obj(b).carrier for b in spec.tail])
    contract = d.tensor(d.tensor(d.identity(head), lf.ev_L(d.dual_obj(spec.glued))), d.identity(tail))
    return contract @ d.tensor(f_hat, g_hat)


def z_gluing_residual(lf, f, g, spec):
    """‖glue(Z f, Z g) - Z(glue(f, g))‖"""
    if not spec.head and not spec.tail:
        raise ShapeMismatch("Z needs at least one remaining boundary")
    x_dual = lf.d.dual_obj(spec.glued)
    z_f = map_Z(lf, f, spec.head + [spec.glued])
    z_g = map_Z(lf, g, [x_dual] + spec.tail)
    unprojected = GluingSpec(spec.glued, spec.head, spec.tail)
    glued = map_Z(lf, glue_correlators(lf, f, g, unprojected), spec.head + spec.tail)
    residual = glue_lifted(lf, z_f, z_g, spec).distance(glued)
    logger.debug(f"Z-gluing residual {residual:.3e}")
    return residual
