"""Retracts of idempotents and recovery of a Cardy algebra from a sewing solution"""

import logging
from dataclasses import dataclass
from typing import Union

import numpy as np

from config.settings import rank_cutoff
from src.algebra.cardy import CardyAlgebra
from src.algebra.frobenius import conjugate
from src.center.center import CenterObject, center_embed
from src.diagram.morphism import Morphism
from src.diagram.objects import Obj
from src.errors import NotEndomorphism, NotIdempotent, RelationFailure
from src.sewing.correlators import GeneratorTag, random_central_automorphism
from src.sewing.relations import check_all, failing_relations

logger = logging.getLogger("mtc_engine.extraction")


@dataclass(frozen=True, eq=False)
class Retract:
    """p = e∘r with r∘e = id on the image"""
    e: Morphism
    r: Morphism
    image: Union[Obj, CenterObject]
    identity: bool = False

    @property
    def carrier(self):
        return self.image.carrier if isinstance(self.image, CenterObject) else self.image

    def section_residual(self, d):
        """‖r∘e - id‖"""
        return (self.r @ self.e).distance(d.identity(self.carrier))

    def split_residual(self, p):
        """‖e∘r - p‖"""
        return (self.e @ self.r).distance(p)


def _check_idempotent(d, p, tol):
    """Raises unless p∘p = p; True when p is the identity"""
    if not p.is_endomorphism():
        raise NotEndomorphism("only endomorphisms can be split")
    scale = max(1.0, p.norm())
    residual = (p @ p).distance(p)
    if residual > tol * scale:
        raise NotIdempotent(residual)
    return p.distance(d.identity(p.source)) < tol * scale


def split_idempotent(d, p, tol=None):
    """Rank factorization of every block: p_c = U_r (S_r V_r^H), image ⊕_c U_c^{rank_c}"""
    tol = d.cat.tol if tol is None else tol
    if _check_idempotent(d, p, tol):
        return Retract(d.identity(p.source), d.identity(p.source), p.source, identity=True)

    cutoff = rank_cutoff(tol)
    sections, retractions, ranks = [], [], []
    for block in p.blocks:
        if not block.size:
            sections.append(np.zeros((block.shape[0], 0), dtype=complex))
            retractions.append(np.zeros((0, block.shape[1]), dtype=complex))
            ranks.append(0)
            continue
        u, s, vh = np.linalg.svd(block)
        rank = int(np.sum(s > cutoff))
        sections.append(u[:, :rank])
        retractions.append(s[:rank, None] * vh[:rank, :])
        ranks.append(rank)

    image = Obj(tuple((c,) for c, rank in enumerate(ranks) for _ in range(rank)))
    e = Morphism(image, p.source, tuple(sections))
    r = Morphism(p.source, image, tuple(retractions))
    logger.debug(f"split idempotent: ranks per channel {ranks}")
    return Retract(e, r, image)


def split_center_idempotent(lf, x, p, tol=None):
    """Split a central idempotent of X through the simples (i, j) of Z(C)

    For each (i, j) the image of p on hom_Z((i,j), X) gives the sections q_β; the
    dual morphisms s^β with s^β q_γ = δ id give the retractions r_β = s^β ∘ p.
    """
    d, center = lf.d, lf.center
    tol = lf.cat.tol if tol is None else tol
    if _check_idempotent(d, p, tol):
        return Retract(d.identity(x.carrier), d.identity(x.carrier), x, identity=True)

    cutoff = rank_cutoff(tol)
    sections, duals, pieces = [], [], []
    for i, j in center.simples():
        simple = center_embed(i, j)
        basis = center.hom_z(simple, x, tol)
        if not basis:
            continue
        images = np.array([(p @ b).vector() for b in basis]).T
        u, s, _ = np.linalg.svd(images, full_matrices=False)
        rank = int(np.sum(s > cutoff))
        if rank == 0:
            continue
        qs = [d.devectorize(u[:, k], simple.carrier, x.carrier) for k in range(rank)]
        sections.extend(qs)
        duals.extend(center.dual_basis(qs, simple, x))
        pieces.extend([simple] * rank)

    if not pieces:
        image = CenterObject(Obj.zero(), ())
    else:
        image = pieces[0]
        for piece in pieces[1:]:
            image = image + piece
    e = d.zero(image.carrier, x.carrier)
    r = d.zero(x.carrier, image.carrier)
    for k, (q, s) in enumerate(zip(sections, duals)):
        e = e + q @ d.projection(image.carrier, k)
        r = r + d.inclusion(image.carrier, k) @ s @ p
    logger.debug(f"split central idempotent: image {[tuple(w) for w in image.carrier.summands]}")
    return Retract(e, r, image)


def _regauge(lf, op, cl, rng):
    """Another retract choice: e -> e∘h, r -> h^{-1}∘r"""
    d = lf.d
    h_op = d.random_morphism(op.carrier, op.carrier, rng)
    h_cl = random_central_automorphism(lf, cl.image, rng)
    op = Retract(op.e @ h_op, d.inverse(h_op) @ op.r, op.image)
    cl = Retract(cl.e @ h_cl, d.inverse(h_cl) @ cl.r, cl.image)
    return op, cl


def extract_cardy(lf, corr, tol=None, rng=None, verify=True):
    """Cardy algebra on the images of the propagators

    m_op = r_o∘m̂_op∘(e_o⊗e_o), Δ_op = (r_o⊗r_o)∘Δ̂_op∘e_o and likewise for the
    closed sector; ι = L(r_o)∘I∘e_c. A generator rng picks a random retract instead
    of the canonical one.
    """
    d = lf.d
    tol = lf.cat.tol if tol is None else tol
    if verify:
        failing = failing_relations(check_all(lf, corr, tol))
        if failing:
            logger.error(f"{corr.name}: not a sewing solution, failing {', '.join(failing)}")
            raise RelationFailure(failing)

    ret_op = split_idempotent(d, corr[GeneratorTag.O_PROP], tol)
    ret_cl = split_center_idempotent(lf, corr.closed, corr[GeneratorTag.C_PROP], tol)
    if rng is not None:
        ret_op, ret_cl = _regauge(lf, ret_op, ret_cl, rng)

    h_op = conjugate(d, corr.open_algebra(), ret_op.r, ret_op.e, name=f"{corr.name}: open")
    h_cl = conjugate(d, corr.closed_algebra(), ret_cl.r, ret_cl.e, center=ret_cl.image,
                     name=f"{corr.name}: closed")
    iota = lf.mor(ret_op.r) @ corr[GeneratorTag.I] @ ret_cl.e
    kind = "identity" if ret_op.identity and ret_cl.identity else "split"
    logger.info(f"Extracted Cardy algebra from {corr.name} ({kind} retract): "
                f"open {len(h_op.carrier)} summands, closed {len(h_cl.carrier)} summands")
    return CardyAlgebra(f"{corr.name} (extracted)", h_cl, h_op, iota)


def retract_report(lf, corr, tol=None):
    """Section and splitting residuals of both propagators"""
    d = lf.d
    tol = lf.cat.tol if tol is None else tol
    rows = []
    for label, p, split in (
        ("open", corr[GeneratorTag.O_PROP], lambda p: split_idempotent(d, p, tol)),
        ("closed", corr[GeneratorTag.C_PROP], lambda p: split_center_idempotent(lf, corr.closed, p, tol)),
    ):
        ret = split(p)
        rows.append({
            "sector": label,
            "identity": ret.identity,
            "image": [list(w) for w in ret.carrier.summands],
            "section_residual": ret.section_residual(d),
            "split_residual": ret.split_residual(p),
        })
    return rows
