"""Algebra and Cardy data files
Documents either name a construction recipe or list sparse morphism blocks explicitly
"""

import json
import logging

import numpy as np

from config.settings import ALGEBRA_SCHEMA, CARDY_SCHEMA
from src.algebra.cardy import CardyAlgebra, canonical_cardy, corrupt_cardy, gauge_cardy
from src.algebra.frobenius import FrobeniusAlgebra, endomorphism_frobenius, transport_L, trivial_algebra
from src.center.center import CenterObject, center_embed
from src.diagram.objects import Obj
from src.errors import ParseError

logger = logging.getLogger("mtc_engine.algebra_io")

STRUCTURE_MAPS = ("m", "eta", "delta", "eps")


def read_document(path, schema):
    """JSON object from path; schema None accepts any schema tag"""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
    except OSError as e:
        raise ParseError(f"cannot read '{path}': {e}") from e
    except json.JSONDecodeError as e:
        raise ParseError(f"'{path}' is not valid JSON: {e}") from e
    if not isinstance(doc, dict):
        raise ParseError(f"'{path}' must hold a JSON object")
    found = doc.get("schema", schema)
    if schema is not None and found != schema:
        raise ParseError(f"'{path}' has schema '{found}', expected '{schema}'")
    return doc


def write_document(path, doc):
    """Write a document as indented JSON"""
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(doc, handle, indent=2)
    logger.info(f"Wrote {doc.get('schema', 'document')} to {path}")


# Objects

def parse_obj(lf, words):
    """[[label, ...], ...] with [] for the unit"""
    if not isinstance(words, list) or not all(isinstance(w, list) for w in words):
        raise ParseError(f"object must be a list of words, got {words!r}")
    return Obj(tuple(tuple(lf.cat.label_index(x) for x in w) for w in words))


def parse_center_obj(lf, spec):
    """{"pairs": [[i, j], ...]} or {"words": [...], "levels": [[bool, ...], ...]}"""
    if not isinstance(spec, dict):
        raise ParseError(f"centre object must be an object, got {spec!r}")
    if "pairs" in spec:
        result = None
        for pair in spec["pairs"]:
            if not isinstance(pair, list) or len(pair) != 2:
                raise ParseError(f"centre pair must have two labels, got {pair!r}")
            simple = center_embed(lf.cat.label_index(pair[0]), lf.cat.label_index(pair[1]))
            result = simple if result is None else result + simple
        if result is None:
            raise ParseError("centre object needs at least one pair")
        return result
    carrier = parse_obj(lf, spec.get("words"))
    levels = spec.get("levels")
    if levels is None:
        return CenterObject.over(carrier)
    return CenterObject(carrier, tuple(tuple(lv) for lv in levels))


def dump_obj(lf, obj):
    return [[lf.cat.labels[x] for x in w] for w in obj.summands]


# Morphisms

def parse_blocks(lf, section, source, target):
    """{"<channel>": [[row, col, re, im], ...]} into a morphism"""
    if not isinstance(section, dict):
        raise ParseError(f"morphism blocks must be an object, got {section!r}")
    f = lf.d.zero(source, target)
    for channel, entries in section.items():
        c = lf.cat.label_index(channel)
        block = f.blocks[c]
        for entry in entries:
            if not isinstance(entry, list) or len(entry) != 4:
                raise ParseError(f"block entry must be [row, col, re, im], got {entry!r}")
            row, col = int(entry[0]), int(entry[1])
            if not (0 <= row < block.shape[0] and 0 <= col < block.shape[1]):
                raise ParseError(f"entry ({row}, {col}) outside the {block.shape} block of channel {channel}")
            block[row, col] = complex(entry[2], entry[3])
    return f


def dump_blocks(lf, f, cutoff=1e-14):
    section = {}
    for c, block in enumerate(f.blocks):
        rows, cols = np.nonzero(np.abs(block) > cutoff)
        if len(rows):
            section[lf.cat.labels[c]] = [
                [int(r), int(k), float(block[r, k].real), float(block[r, k].imag)] for r, k in zip(rows, cols)
            ]
    return section


# Algebras

def build_algebra(lf, spec):
    """Algebra from a recipe or from explicit blocks"""
    if not isinstance(spec, dict):
        raise ParseError(f"algebra entry must be an object, got {spec!r}")
    kind = spec.get("construction", "explicit")
    if kind == "trivial":
        return trivial_algebra(lf.d, in_center=bool(spec.get("center", False)))
    if kind == "endomorphism":
        return endomorphism_frobenius(lf.d, parse_obj(lf, spec.get("object")), spec.get("name"))
    if kind == "transport":
        return transport_L(lf, build_algebra(lf, spec.get("of", {"construction": "trivial"})),
                           commutative=bool(spec.get("commutative", False)))
    if kind != "explicit":
        raise ParseError(f"unknown algebra construction '{kind}'")

    carrier = parse_obj(lf, spec.get("carrier"))
    center = None
    if "levels" in spec:
        center = CenterObject(carrier, tuple(tuple(lv) for lv in spec["levels"]))
    unit, pair = Obj.unit(), carrier.tensor(carrier)
    shapes = {"m": (pair, carrier), "eta": (unit, carrier), "delta": (carrier, pair), "eps": (carrier, unit)}
    maps = {}
    for name in STRUCTURE_MAPS:
        if name not in spec:
            raise ParseError(f"explicit algebra is missing '{name}'")
        maps[name] = parse_blocks(lf, spec[name], *shapes[name])
    return FrobeniusAlgebra(
        name=spec.get("name", "explicit"),
        carrier=carrier,
        center=center,
        symmetric=bool(spec.get("symmetric", False)),
        commutative=bool(spec.get("commutative", False)),
        **maps,
    )


def dump_algebra(lf, alg):
    doc = {
        "construction": "explicit",
        "name": alg.name,
        "carrier": dump_obj(lf, alg.carrier),
        "symmetric": alg.symmetric,
        "commutative": alg.commutative,
    }
    if alg.center is not None:
        doc["levels"] = [list(lv) for lv in alg.center.levels]
    for name in STRUCTURE_MAPS:
        doc[name] = dump_blocks(lf, getattr(alg, name))
    return doc


def load_algebra(lf, path):
    """Load and build an algebra document"""
    doc = read_document(path, ALGEBRA_SCHEMA)
    alg = build_algebra(lf, doc)
    logger.info(f"Loaded algebra {alg.name} on {len(alg.carrier)} summands from {path}")
    return alg


# Cardy algebras

def build_cardy(lf, spec):
    """Build a Cardy algebra from a recipe document

    construction is canonical (the default) or explicit; an optional gauge seed and
    corruption block are applied after construction, in that order.
    """
    kind = spec.get("construction", "canonical")
    if kind == "canonical":
        cd = canonical_cardy(lf)
    elif kind == "explicit":
        h_cl = build_algebra(lf, spec.get("closed"))
        h_op = build_algebra(lf, spec.get("open"))
        if h_cl.center is None:
            raise ParseError("closed algebra needs levels")
        target = lf.obj(h_op.carrier).carrier
        iota = parse_blocks(lf, spec.get("iota", {}), h_cl.carrier, target)
        cd = CardyAlgebra(spec.get("name", "explicit"), h_cl, h_op, iota)
    else:
        raise ParseError(f"unknown Cardy construction '{kind}'")

    if "gauge" in spec:
        cd = gauge_cardy(lf, cd, np.random.default_rng(int(spec["gauge"].get("seed", 0))))
    corruption = spec.get("corruption")
    if corruption:
        cd = apply_corruption(lf, cd, corruption)
    if "name" in spec:
        cd = CardyAlgebra(spec["name"], cd.h_cl, cd.h_op, cd.iota)
    return cd


def apply_corruption(lf, cd, corruption):
    params = {k: v for k, v in corruption.items() if k != "kind"}
    if "object" in params:
        params["object"] = parse_obj(lf, params["object"])
    try:
        return corrupt_cardy(lf, cd, corruption.get("kind", ""), **params)
    except ValueError as e:
        raise ParseError(str(e)) from e


def dump_cardy(lf, cd):
    return {
        "schema": CARDY_SCHEMA,
        "name": cd.name,
        "construction": "explicit",
        "closed": dump_algebra(lf, cd.h_cl),
        "open": dump_algebra(lf, cd.h_op),
        "iota": dump_blocks(lf, cd.iota),
    }


def load_cardy(lf, path):
    """Load a Cardy algebra document"""
    doc = read_document(path, CARDY_SCHEMA)
    cd = build_cardy(lf, doc)
    logger.info(f"Loaded Cardy algebra {cd.name} from {path}")
    return cd



def load_inputs(lf, paths):
    """Split --algebra files by their schema tag; untagged files are read as Cardy algebras"""
    cardy, algebras = [], []
    for path in paths:
        schema = read_document(path, None).get("schema", CARDY_SCHEMA)
        if schema == ALGEBRA_SCHEMA:
            algebras.append(load_algebra(lf, path))
        elif schema == CARDY_SCHEMA:
            cardy.append(load_cardy(lf, path))
        else:
            raise ParseError(f"'{path}' has schema '{schema}', expected an algebra or Cardy document")
    return cardy, algebras
