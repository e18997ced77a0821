"""Sewing relations R1-R32 as morphism equations between correlators
Each relation builds both sides from the correlators, braidings, dualities and
the L-functor structure maps and reports the largest entry of their difference
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Dict, List, Tuple

from src.algebra.cardy import left_centre_idempotent, modularity_sides
from src.algebra.frobenius import frobenius_adjoint, symmetry_sides, transport_L
from src.center.center import center_embed
from src.diagram.morphism import Morphism
from src.errors import UnknownRelation
from src.mtc_core.axioms import killing_ring_residual
from src.sewing.correlators import GeneratorTag

logger = logging.getLogger("mtc_engine.relations")

Equality = Tuple[Morphism, Morphism]

RELATION_COUNT = 32

RELATION_NOTES: Dict[str, str] = {
    "R1": "open left unit: m(η⊗id) = p",
    "R2": "open right unit: m(id⊗η) = p",
    "R3": "open left counit: (ε⊗id)Δ = p",
    "R4": "open right counit: (id⊗ε)Δ = p",
    "R5": "open symmetry: both maps A -> A* induced by εm agree",
    "R6": "open associativity",
    "R7": "open coassociativity",
    "R8": "open Frobenius: (id⊗m)(Δ⊗id) = Δm",
    "R9": "open Frobenius: (m⊗id)(id⊗Δ) = Δm",
    "R10": "open propagator absorbed by m: m(p⊗id) = m",
    "R11": "open propagator absorbed by Δ: (p⊗id)Δ = Δ",
    "R12": "open propagator absorbed by η: pη = η",
    "R13": "open propagator absorbed by ε: εp = ε",
    "R14": "closed unit: m(η⊗id) = m(id⊗η) = p",
    "R15": "closed counit: (ε⊗id)Δ = (id⊗ε)Δ = p",
    "R16": "closed symmetry: both maps X -> X* induced by εm agree",
    "R17": "closed associativity",
    "R18": "closed coassociativity",
    "R19": "closed Frobenius, both sides",
    "R20": "closed propagator absorbed by m and η",
    "R21": "closed propagator absorbed by Δ and ε",
    "R22": "closed commutativity: m∘c = m with the Z(C)-braiding",
    "R23": "closed cocommutativity: c∘Δ = Δ",
    "R24": "Dehn twist: θ_X ∘ p = p (encoding-level assumption)",
    "R25": "braid move: m∘c = m∘c⁻¹ (encoding-level assumption)",
    "R26": "center condition: m_op(Î⊗id) = m_op(id⊗Î)∘β_{X,A} with Î = counit∘I",
    "R27": "I is multiplicative: I∘m_cl = L(m_op)∘φ∘(I⊗I), and central",
    "R28": "I† is the Frobenius adjoint of I between H_cl and L(H_op)",
    "R29": "I† absorbs both propagators: p_cl∘I†∘L(p_op) = I†",
    "R30": "I is unital: I∘η_cl = L(η_op)∘φ_1",
    "R31": "Cardy condition: I∘I† equals the left-centre idempotent of L(H_op)",
    "R32": "S-move: torus one-point equality on every handle (i,j) through C_η, C_m and C_Δ, the closed snake (εm⊗id)(id⊗Δη) = p, killing ring and completeness",
}


@dataclass(frozen=True, eq=False)
class RelationResult:
    relation: str
    lhs: Morphism
    rhs: Morphism
    residual: float
    passed: bool
    note: str
    detail: str = ""

    def to_dict(self):
        return {
            "relation": self.relation,
            "residual": self.residual,
            "passed": self.passed,
            "note": self.note,
            "detail": self.detail,
        }


def relation_id(rid):
    """Normalize 7, "7", "r7" and "R7" to "R7" """
    text = str(rid).strip().upper()
    if text.startswith("R"):
        text = text[1:]
    if not text.isdigit() or not 1 <= int(text) <= RELATION_COUNT:
        raise UnknownRelation(f"no sewing relation '{rid}'; ids run from R1 to R{RELATION_COUNT}")
    return f"R{int(text)}"


class RelationContext:
    """Shared building blocks for the relations on one correlator set"""

    def __init__(self, lf, corr):
        self.lf = lf
        self.d = lf.d
        self.center = lf.center
        self.corr = corr
        self.a = corr.open_obj
        self.x = corr.closed

    def prepare(self):
        """Evaluate every cached building block up front"""
        for name in ("op", "cl", "lifted", "id_a", "id_x", "c_xx", "iota_mate"):
            getattr(self, name)
        return self

    @cached_property
    def op(self):
        return self.corr.open_algebra()

    @cached_property
    def cl(self):
        return self.corr.closed_algebra()

    @cached_property
    def lifted(self):
        return transport_L(self.lf, self.op)

    @cached_property
    def id_a(self):
        return self.d.identity(self.a)

    @cached_property
    def id_x(self):
        return self.d.identity(self.x.carrier)

    @cached_property
    def c_xx(self):
        return self.center.braiding(self.x, self.x)

    @property
    def p_op(self):
        return self.corr[GeneratorTag.O_PROP]

    @property
    def p_cl(self):
        return self.corr[GeneratorTag.C_PROP]

    @property
    def iota(self):
        return self.corr[GeneratorTag.I]

    @property
    def iota_dag(self):
        return self.corr[GeneratorTag.I_DAGGER]

    @cached_property
    def iota_mate(self):
        return self.lf.counit(self.a) @ self.iota


# Frobenius-type relations, shared by both sectors

def _unit(c, alg, p, one, side):
    t = c.d.tensor
    if side == "left":
        return alg.m @ t(alg.eta, one), p
    return alg.m @ t(one, alg.eta), p


def _counit(c, alg, p, one, side):
    t = c.d.tensor
    if side == "left":
        return t(alg.eps, one) @ alg.delta, p
    return t(one, alg.eps) @ alg.delta, p


def _assoc(c, alg, one):
    t = c.d.tensor
    return alg.m @ t(alg.m, one), alg.m @ t(one, alg.m)


def _coassoc(c, alg, one):
    t = c.d.tensor
    return t(alg.delta, one) @ alg.delta, t(one, alg.delta) @ alg.delta


def _frobenius(c, alg, one, side):
    t = c.d.tensor
    if side == "left":
        return t(one, alg.m) @ t(alg.delta, one), alg.delta @ alg.m
    return t(alg.m, one) @ t(one, alg.delta), alg.delta @ alg.m


# Open sector

def _r1(c):
    return [_unit(c, c.op, c.p_op, c.id_a, "left")]


def _r2(c):
    return [_unit(c, c.op, c.p_op, c.id_a, "right")]


def _r3(c):
    return [_counit(c, c.op, c.p_op, c.id_a, "left")]


def _r4(c):
    return [_counit(c, c.op, c.p_op, c.id_a, "right")]


def _r5(c):
    return [symmetry_sides(c.d, c.op)]


def _r6(c):
    return [_assoc(c, c.op, c.id_a)]


def _r7(c):
    return [_coassoc(c, c.op, c.id_a)]


def _r8(c):
    return [_frobenius(c, c.op, c.id_a, "left")]


def _r9(c):
    return [_frobenius(c, c.op, c.id_a, "right")]


def _r10(c):
    return [(c.op.m @ c.d.tensor(c.p_op, c.id_a), c.op.m)]


def _r11(c):
    return [(c.d.tensor(c.p_op, c.id_a) @ c.op.delta, c.op.delta)]


def _r12(c):
    return [(c.p_op @ c.op.eta, c.op.eta)]


def _r13(c):
    return [(c.op.eps @ c.p_op, c.op.eps)]


# Closed sector

def _r14(c):
    return [_unit(c, c.cl, c.p_cl, c.id_x, "left"), _unit(c, c.cl, c.p_cl, c.id_x, "right")]


def _r15(c):
    return [_counit(c, c.cl, c.p_cl, c.id_x, "left"), _counit(c, c.cl, c.p_cl, c.id_x, "right")]


def _r16(c):
    return [symmetry_sides(c.d, c.cl)]


def _r17(c):
    return [_assoc(c, c.cl, c.id_x)]


def _r18(c):
    return [_coassoc(c, c.cl, c.id_x)]


def _r19(c):
    return [_frobenius(c, c.cl, c.id_x, "left"), _frobenius(c, c.cl, c.id_x, "right")]


def _r20(c):
    return [(c.cl.m @ c.d.tensor(c.p_cl, c.id_x), c.cl.m), (c.p_cl @ c.cl.eta, c.cl.eta)]


def _r21(c):
    return [(c.d.tensor(c.p_cl, c.id_x) @ c.cl.delta, c.cl.delta), (c.cl.eps @ c.p_cl, c.cl.eps)]


def _r22(c):
    return [(c.cl.m @ c.c_xx, c.cl.m)]


def _r23(c):
    return [(c.c_xx @ c.cl.delta, c.cl.delta)]


def _r24(c):
    return [(c.center.twist(c.x) @ c.p_cl, c.p_cl)]


def _r25(c):
    inverse = c.center.half_braiding_inv(c.x, c.x.carrier)
    return [(c.cl.m @ c.c_xx, c.cl.m @ inverse)]


# Open-closed

def _r26(c):
    d = c.d
    mate = c.iota_mate
    beta = c.center.half_braiding(c.x, c.a)
    return [(c.op.m @ d.tensor(mate, c.id_a), c.op.m @ d.tensor(c.id_a, mate) @ beta)]


def _r27(c):
    d = c.d
    lhs = c.iota @ c.cl.m
    rhs = c.lifted.m @ d.tensor(c.iota, c.iota)
    return [(lhs, rhs)]


def _r28(c):
    return [(c.iota_dag, frobenius_adjoint(c.d, c.iota, c.cl, c.lifted))]


def _r29(c):
    return [(c.p_cl @ c.iota_dag @ c.lf.mor(c.p_op), c.iota_dag)]


def _r30(c):
    return [(c.iota @ c.cl.eta, c.lifted.eta)]


def _r31(c):
    return [(c.iota @ c.iota_dag, left_centre_idempotent(c.lf, c.lifted))]


def _r32(c):
    """Torus one-point reduction with handle X ⊗ X* for every (i,j), then the closed snake"""
    d = c.d
    unit = c.corr[GeneratorTag.C_ETA]
    equalities = []
    for i in range(c.lf.n):
        for j in range(c.lf.n):
            handle = center_embed(i, j).carrier
            lhs, rhs = modularity_sides(c.lf, c.cl, i, j)
            seed = d.tensor(unit, d.coev(handle))
            idd = d.identity(d.dual_obj(handle))
            equalities.append((d.tensor(lhs, idd) @ seed, d.tensor(rhs, idd) @ seed))
    snake = d.compose(d.tensor(c.cl.eps @ c.cl.m, c.id_x), d.tensor(c.id_x, c.cl.delta @ c.cl.eta))
    equalities.append((snake, c.p_cl))
    return equalities


EQUATIONS: Dict[str, Callable[[RelationContext], List[Equality]]] = {
    "R1": _r1, "R2": _r2, "R3": _r3, "R4": _r4, "R5": _r5, "R6": _r6, "R7": _r7, "R8": _r8,
    "R9": _r9, "R10": _r10, "R11": _r11, "R12": _r12, "R13": _r13, "R14": _r14, "R15": _r15,
    "R16": _r16, "R17": _r17, "R18": _r18, "R19": _r19, "R20": _r20, "R21": _r21, "R22": _r22,
    "R23": _r23, "R24": _r24, "R25": _r25, "R26": _r26, "R27": _r27, "R28": _r28, "R29": _r29,
    "R30": _r30, "R31": _r31, "R32": _r32,
}


def check_relation(lf, rid, corr, tol=None, context=None):
    """Evaluate one relation; pass iff residual < tol"""
    rid = relation_id(rid)
    tol = lf.cat.tol if tol is None else tol
    context = context or RelationContext(lf, corr)
    note = RELATION_NOTES[rid]
    equalities = EQUATIONS[rid](context)
    residuals = [lhs.distance(rhs) for lhs, rhs in equalities]
    if rid == "R27":
        central = context.center.centrality_residual(context.iota, context.x, corr.lifted)
        residuals.append(central)
    if rid == "R32":
        residuals.append(killing_ring_residual(lf.cat))
        residuals.append(max(context.d.completeness_residual(context.a),
                             context.d.completeness_residual(context.x.carrier)))
    residual = float(max(residuals))
    lhs, rhs = equalities[0]
    detail = ", ".join(f"{r:.3e}" for r in residuals)
    return RelationResult(rid, lhs, rhs, residual, residual < tol, note, f"residuals {detail}")


def check_all(lf, corr, tol=None):
    """All 32 relations in order"""
    context = RelationContext(lf, corr)
    results = [check_relation(lf, k, corr, tol, context) for k in range(1, RELATION_COUNT + 1)]
    failing = [r.relation for r in results if not r.passed]
    if failing:
        logger.info(f"{corr.name}: failing relations {', '.join(failing)}")
    else:
        logger.debug(f"{corr.name}: all {RELATION_COUNT} relations hold")
    return results


def failing_relations(results):
    return [r.relation for r in results if not r.passed]
