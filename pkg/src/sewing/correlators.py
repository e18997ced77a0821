"""Fundamental correlators on the generating world sheets
Open correlators live in C, closed ones in Z(C), and I / I† connect H_cl with L(H_op)
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict

import numpy as np

from config.settings import CORRELATOR_SCHEMA
from src.algebra.cardy import iota_dagger, off_channel_entry
from src.algebra.frobenius import FrobeniusAlgebra, conjugate
from src.algebra.io import build_cardy, parse_center_obj, parse_obj, read_document
from src.center.center import CenterObject
from src.diagram.morphism import Morphism
from src.diagram.objects import Obj
from src.errors import ParseError, ShapeMismatch

logger = logging.getLogger("mtc_engine.correlators")


class GeneratorTag(Enum):
    O_PROP = "O_prop"
    O_M = "O_m"
    O_DELTA = "O_Δ"
    O_ETA = "O_η"
    O_EPS = "O_ε"
    C_PROP = "C_prop"
    C_M = "C_m"
    C_DELTA = "C_Δ"
    C_ETA = "C_η"
    C_EPS = "C_ε"
    I = "I"
    I_DAGGER = "I†"

    @property
    def sector(self):
        if self in (GeneratorTag.I, GeneratorTag.I_DAGGER):
            return "open-closed"
        return "open" if self.value.startswith("O") else "closed"


OPEN_TAGS = (GeneratorTag.O_M, GeneratorTag.O_ETA, GeneratorTag.O_DELTA, GeneratorTag.O_EPS)
CLOSED_TAGS = (GeneratorTag.C_M, GeneratorTag.C_ETA, GeneratorTag.C_DELTA, GeneratorTag.C_EPS)


def signature(tag, open_obj, closed, lifted):
    """Boundary signature (incoming, outgoing) of a generating world sheet"""
    unit = Obj.unit()
    shapes = {
        GeneratorTag.O_PROP: (open_obj, open_obj),
        GeneratorTag.O_M: (open_obj.tensor(open_obj), open_obj),
        GeneratorTag.O_DELTA: (open_obj, open_obj.tensor(open_obj)),
        GeneratorTag.O_ETA: (unit, open_obj),
        GeneratorTag.O_EPS: (open_obj, unit),
        GeneratorTag.C_PROP: (closed, closed),
        GeneratorTag.C_M: (closed.tensor(closed), closed),
        GeneratorTag.C_DELTA: (closed, closed.tensor(closed)),
        GeneratorTag.C_ETA: (unit, closed),
        GeneratorTag.C_EPS: (closed, unit),
        GeneratorTag.I: (closed, lifted),
        GeneratorTag.I_DAGGER: (lifted, closed),
    }
    return shapes[tag]


@dataclass(frozen=True, eq=False)
class CorrelatorSet:
    """One morphism per generator over the boundary objects Ĝ_op, Ĝ_cl and L(Ĝ_op)"""
    name: str
    open_obj: Obj
    closed: CenterObject
    lifted: CenterObject
    maps: Dict[GeneratorTag, Morphism]
    symmetric: bool = True
    notes: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        missing = [t.value for t in GeneratorTag if t not in self.maps]
        if missing:
            raise ShapeMismatch(f"{self.name}: no correlator for {', '.join(missing)}")
        for tag, f in self.maps.items():
            source, target = signature(tag, self.open_obj, self.closed.carrier, self.lifted.carrier)
            if f.source != source or f.target != target:
                raise ShapeMismatch(
                    f"{self.name}: {tag.value} has shape {f.source.summands} -> {f.target.summands}, "
                    f"expected {source.summands} -> {target.summands}"
                )

    def __getitem__(self, tag):
        return self.maps[tag]

    def replaced(self, tag, f, name=None):
        maps = dict(self.maps)
        maps[tag] = f
        return CorrelatorSet(name or self.name, self.open_obj, self.closed, self.lifted, maps,
                             self.symmetric, dict(self.notes))

    def open_algebra(self):
        """Open structure maps read as an (unchecked) algebra on Ĝ_op"""
        m = self.maps
        return FrobeniusAlgebra(
            name=f"{self.name}: open",
            carrier=self.open_obj,
            m=m[GeneratorTag.O_M], eta=m[GeneratorTag.O_ETA],
            delta=m[GeneratorTag.O_DELTA], eps=m[GeneratorTag.O_EPS],
            symmetric=self.symmetric,
        )

    def closed_algebra(self):
        m = self.maps
        return FrobeniusAlgebra(
            name=f"{self.name}: closed",
            carrier=self.closed.carrier,
            m=m[GeneratorTag.C_M], eta=m[GeneratorTag.C_ETA],
            delta=m[GeneratorTag.C_DELTA], eps=m[GeneratorTag.C_EPS],
            center=self.closed,
            commutative=True,
        )

    def props_trivial(self, d, tol):
        """True when both propagators are identities"""
        return (self.maps[GeneratorTag.O_PROP].distance(d.identity(self.open_obj)) < tol
                and self.maps[GeneratorTag.C_PROP].distance(d.identity(self.closed.carrier)) < tol)


def from_algebras(lf, name, h_cl, h_op, iota, iota_dag, p_op, p_cl):
    maps = {
        GeneratorTag.O_PROP: p_op,
        GeneratorTag.O_M: h_op.m,
        GeneratorTag.O_DELTA: h_op.delta,
        GeneratorTag.O_ETA: h_op.eta,
        GeneratorTag.O_EPS: h_op.eps,
        GeneratorTag.C_PROP: p_cl,
        GeneratorTag.C_M: h_cl.m,
        GeneratorTag.C_DELTA: h_cl.delta,
        GeneratorTag.C_ETA: h_cl.eta,
        GeneratorTag.C_EPS: h_cl.eps,
        GeneratorTag.I: iota,
        GeneratorTag.I_DAGGER: iota_dag,
    }
    return CorrelatorSet(name, h_op.carrier, h_cl.center, lf.obj(h_op.carrier), maps, h_op.symmetric)


def canonical_correlators(lf, cd):
    """Structure maps of the Cardy algebra, identity propagators, I = ι and I† = ι†"""
    d = lf.d
    corr = from_algebras(
        lf, cd.name, cd.h_cl, cd.h_op, cd.iota, iota_dagger(lf, cd),
        d.identity(cd.h_op.carrier), d.identity(cd.h_cl.carrier),
    )
    logger.debug(f"canonical correlators for {cd.name}: Ĝ_op has {len(corr.open_obj)} summands, "
                 f"Ĝ_cl has {len(corr.closed)}")
    return corr


# Inflation

def summand_inclusion(d, small, big):
    """small -> big for big = small + junk"""
    return d.assemble(small, big, {(k, k): d.identity(small.summand(k)) for k in range(len(small))})


def summand_projection(d, big, small):
    return d.assemble(big, small, {(k, k): d.identity(small.summand(k)) for k in range(len(small))})


def random_central_automorphism(lf, x, rng):
    d = lf.d
    g = d.zero(x.carrier, x.carrier)
    for b in lf.center.hom_z(x, x):
        g = g + complex(rng.standard_normal(), rng.standard_normal()) * b
    return g


def inflate(lf, corr, open_junk, closed_junk, rng):
    """Embed the correlators in Ĝ = G ⊕ junk through random gauges

    With e = g∘incl and r = proj∘g^{-1} the propagators become p = e∘r and every
    structure map is conjugated; the result is a sewing solution with nontrivial
    propagators whose retract is the original set.
    """
    d = lf.d
    if not corr.props_trivial(d, lf.cat.tol):
        raise ShapeMismatch("inflate expects identity propagators")
    g_op_obj = corr.open_obj + open_junk
    cl_obj = corr.closed + closed_junk

    g_op = d.random_morphism(g_op_obj, g_op_obj, rng)
    gauge_cl = random_central_automorphism(lf, cl_obj, rng)
    e_op = g_op @ summand_inclusion(d, corr.open_obj, g_op_obj)
    r_op = summand_projection(d, g_op_obj, corr.open_obj) @ d.inverse(g_op)
    e_cl = gauge_cl @ summand_inclusion(d, corr.closed.carrier, cl_obj.carrier)
    r_cl = summand_projection(d, cl_obj.carrier, corr.closed.carrier) @ d.inverse(gauge_cl)

    h_op = conjugate(d, corr.open_algebra(), e_op, r_op)
    h_cl = conjugate(d, corr.closed_algebra(), e_cl, r_cl, center=cl_obj)
    iota = lf.mor(e_op) @ corr[GeneratorTag.I] @ r_cl
    iota_dag = e_cl @ corr[GeneratorTag.I_DAGGER] @ lf.mor(r_op)
    inflated = from_algebras(lf, f"{corr.name} (inflated)", h_cl, h_op, iota, iota_dag, e_op @ r_op, e_cl @ r_cl)
    inflated.notes["junk"] = {"open": len(open_junk), "closed": len(closed_junk)}
    logger.info(f"Inflated {corr.name}: open {len(corr.open_obj)} -> {len(g_op_obj)} summands, "
                f"closed {len(corr.closed)} -> {len(cl_obj)} summands")
    return inflated


# Negative controls

def corrupt_correlators(lf, corr, kind, **params):
    """off-channel: one entry between different summands; scale: multiply one correlator"""
    tag = GeneratorTag(params.get("tag", GeneratorTag.I.value))
    name = f"{corr.name} [{kind} {tag.value}]"
    if kind == "off-channel":
        return corr.replaced(tag, off_channel_entry(lf, corr[tag], params.get("value", 0.1)), name)
    if kind == "scale":
        return corr.replaced(tag, corr[tag] * params.get("factor", 2.0), name)
    raise ValueError(f"unknown correlator corruption '{kind}'")


# Files

def build_correlators(lf, doc, rng=None):
    cardy_spec = doc.get("cardy", {"construction": "canonical"})
    if not isinstance(cardy_spec, dict):
        raise ParseError("'cardy' must be an object")
    corr = canonical_correlators(lf, build_cardy(lf, cardy_spec))

    inflation = doc.get("inflation")
    if inflation:
        seed = inflation.get("seed")
        generator = np.random.default_rng(seed) if seed is not None else (rng or np.random.default_rng(0))
        open_junk = parse_obj(lf, inflation.get("open_junk", []))
        closed_spec = inflation.get("closed_junk")
        if closed_spec is None:
            raise ParseError("inflation needs 'closed_junk'")
        corr = inflate(lf, corr, open_junk, parse_center_obj(lf, closed_spec), generator)

    corruption = doc.get("corruption")
    if corruption:
        params = {k: v for k, v in corruption.items() if k != "kind"}
        try:
            corr = corrupt_correlators(lf, corr, corruption.get("kind", ""), **params)
        except ValueError as e:
            raise ParseError(str(e)) from e
    if "name" in doc:
        corr = CorrelatorSet(doc["name"], corr.open_obj, corr.closed, corr.lifted, corr.maps,
                             corr.symmetric, corr.notes)
    return corr


def load_correlators(lf, path, rng=None):
    doc = read_document(path, CORRELATOR_SCHEMA)
    corr = build_correlators(lf, doc, rng)
    logger.info(f"Loaded correlator set {corr.name} from {path}")
    return corr
