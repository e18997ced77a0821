"""Skeletal modular tensor category data
Loads category files, stores fusion, F- and R-symbols and exposes derived quantities
"""

import itertools
import json
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Tuple

import numpy as np

from config.settings import CATEGORY_SCHEMA, DEFAULT_TOLERANCE
from src.errors import ConsistencyError, ParseError

logger = logging.getLogger("mtc_engine.category")

Vertex = Tuple[int, int, int]


def left_basis(N: np.ndarray, a: int, b: int, c: int, d: int) -> List[Vertex]:
    """Trees ((a b)_e^α c)_d^β as (e, α, β), labels in index order"""
    n = N.shape[0]
    return [
        (e, alpha, beta)
        for e in range(n)
        for alpha in range(N[a, b, e])
        for beta in range(N[e, c, d])
    ]


def right_basis(N: np.ndarray, a: int, b: int, c: int, d: int) -> List[Vertex]:
    """Trees (a (b c)_f^γ)_d^δ as (f, γ, δ)"""
    n = N.shape[0]
    return [
        (f, gamma, delta)
        for f in range(n)
        for gamma in range(N[b, c, f])
        for delta in range(N[a, f, d])
    ]


@dataclass(frozen=True)
class FMove:
    """Change of basis ((ab)c) -> (a(bc)) for one quadruple (a, b, c; d)"""
    left: Tuple[Vertex, ...]
    right: Tuple[Vertex, ...]
    matrix: np.ndarray
    left_pos: Dict[Vertex, int] = field(repr=False, compare=False, default_factory=dict)
    right_pos: Dict[Vertex, int] = field(repr=False, compare=False, default_factory=dict)

    @classmethod
    def build(cls, left, right, matrix):
        return cls(
            left=tuple(left),
            right=tuple(right),
            matrix=np.asarray(matrix, dtype=complex),
            left_pos={v: i for i, v in enumerate(left)},
            right_pos={v: i for i, v in enumerate(right)},
        )

    @cached_property
    def inverse(self) -> np.ndarray:
        if self.matrix.shape[0] != self.matrix.shape[1]:
            raise np.linalg.LinAlgError(f"F-move of shape {self.matrix.shape} is not square")
        if self.matrix.size == 0:
            return self.matrix.copy()
        return np.linalg.inv(self.matrix)

    def entry(self, left: Vertex, right: Vertex) -> complex:
        return self.matrix[self.left_pos[left], self.right_pos[right]]

    def inverse_entry(self, right: Vertex, left: Vertex) -> complex:
        return self.inverse[self.right_pos[right], self.left_pos[left]]


def unit_fmove(N: np.ndarray, a: int, b: int, c: int, d: int) -> FMove:
    """Identity re-association when one of a, b, c is the unit"""
    left = left_basis(N, a, b, c, d)
    right = right_basis(N, a, b, c, d)
    move = FMove.build(left, right, np.zeros((len(left), len(right)), dtype=complex))
    for e, alpha, beta in left:
        if a == 0:
            target = (d, beta, 0)
        elif b == 0:
            target = (c, 0, beta)
        else:
            target = (b, 0, alpha)
        move.matrix[move.left_pos[(e, alpha, beta)], move.right_pos[target]] = 1.0
    return move


class CategoryData:
    """Skeletal MTC: labels, fusion multiplicities, F/R-symbols and pivotal coefficients"""

    def __init__(self, name, labels, dual, N, fmoves, rsymbols, pivotal, tol=DEFAULT_TOLERANCE):
        self.name = name
        self.labels: Tuple[str, ...] = tuple(labels)
        self.dual: Tuple[int, ...] = tuple(dual)
        self.N = np.asarray(N, dtype=int)
        self.N.setflags(write=False)
        self.pivotal = np.asarray(pivotal, dtype=complex)
        self.tol = tol
        self._fmoves: Dict[Tuple[int, int, int, int], FMove] = dict(fmoves)
        self._rsymbols: Dict[Tuple[int, int, int], np.ndarray] = dict(rsymbols)
        self._empty = FMove.build([], [], np.zeros((0, 0), dtype=complex))
        self.logger = logging.getLogger("mtc_engine.category")

    def __repr__(self):
        return f"CategoryData({self.name!r}, labels={list(self.labels)})"

    @property
    def rank(self) -> int:
        return len(self.labels)

    def label_index(self, name) -> int:
        """Index of a label given by name or index"""
        if isinstance(name, (int, np.integer)) and 0 <= int(name) < self.rank:
            return int(name)
        if name in self.labels:
            return self.labels.index(name)
        raise ParseError(f"unknown label '{name}' for category {self.name}")

    def channels(self, a: int, b: int) -> List[int]:
        """Labels c with N_{ab}^c > 0"""
        return [c for c in range(self.rank) if self.N[a, b, c] > 0]

    def fmove(self, a: int, b: int, c: int, d: int) -> FMove:
        return self._fmoves.get((a, b, c, d), self._empty)

    def rsymbol(self, a: int, b: int, c: int) -> np.ndarray:
        """R^{ab}_c as an N_{ab}^c square matrix: β_{a,b} t^μ = Σ_ν R[μ, ν] t'^ν"""
        r = self._rsymbols.get((a, b, c))
        if r is None:
            return np.zeros((self.N[a, b, c], self.N[a, b, c]), dtype=complex)
        return r

    def ev_scalar(self, a: int) -> complex:
        """ev_a: a* ⊗ a -> 1 on the canonical tree"""
        move = self.fmove(a, self.dual[a], a, a)
        return 1.0 / move.entry((0, 0, 0), (0, 0, 0))

    # Derived quantities

    @cached_property
    def dims(self) -> np.ndarray:
        """Right quantum dimensions d_a = ev~_a ∘ coev_a"""
        return np.array([self.pivotal[a] * self.ev_scalar(self.dual[a]) for a in range(self.rank)])

    @cached_property
    def dims_left(self) -> np.ndarray:
        """Left quantum dimensions ev_a ∘ coev~_a"""
        return np.array([self.ev_scalar(a) / self.pivotal[a] for a in range(self.rank)])

    @cached_property
    def global_dim_sq(self) -> complex:
        return complex(np.sum(self.dims ** 2))

    @cached_property
    def twists(self) -> np.ndarray:
        """θ_a from the curl (id ⊗ ev~)(β_{a,a} ⊗ id)(id ⊗ coev)"""
        theta = np.zeros(self.rank, dtype=complex)
        for a in range(self.rank):
            move = self.fmove(a, a, self.dual[a], a)
            unit_tree = (0, 0, 0)
            coeffs = np.array([move.inverse_entry(unit_tree, v) for v in move.left])
            braided = np.zeros_like(coeffs)
            for i, (e, alpha, beta) in enumerate(move.left):
                r = self.rsymbol(a, a, e)
                for alpha2 in range(r.shape[1]):
                    braided[move.left_pos[(e, alpha2, beta)]] += coeffs[i] * r[alpha, alpha2]
            curl = sum(braided[i] * move.entry(v, unit_tree) for i, v in enumerate(move.left))
            theta[a] = curl * self.dims[a]
        return theta

    @cached_property
    def s_tilde(self) -> np.ndarray:
        """Hopf-link traces s̃_{ij} = tr(β_{j,i} ∘ β_{i,j})"""
        n = self.rank
        s = np.zeros((n, n), dtype=complex)
        for i, j in itertools.product(range(n), repeat=2):
            s[i, j] = sum(
                self.dims[c] * np.trace(self.rsymbol(i, j, c) @ self.rsymbol(j, i, c))
                for c in self.channels(i, j)
            )
        return s

    @cached_property
    def s_matrix(self) -> np.ndarray:
        """Normalized S = s̃ / D"""
        return self.s_tilde / np.sqrt(self.global_dim_sq)

    def killing_ring(self, l: int) -> complex:
        return complex(sum(self.dims[i] * self.s_tilde[i, l] for i in range(self.rank)) / self.dims[l])

    def touch(self):
        """Compute and cache every derived quantity"""
        for attribute in ("dims", "dims_left", "global_dim_sq", "twists", "s_tilde", "s_matrix"):
            getattr(self, attribute)
        return self


def smatrix(cat: CategoryData) -> np.ndarray:
    """s̃ as a row-major matrix"""
    return cat.s_tilde.copy()


def verify_killing_ring(cat: CategoryData, l) -> complex:
    """Σ_i d_i s̃_{il} / d_l, equal to D² δ_{l,0}"""
    return cat.killing_ring(cat.label_index(l))


# Parsing

def _complex(pair, where):
    try:
        re, im = pair
        return complex(float(re), float(im))
    except (TypeError, ValueError) as e:
        raise ParseError(f"{where}: expected [re, im], got {pair!r}") from e


def _key(cat_labels, key, size, where):
    parts = [p.strip() for p in str(key).split(",")]
    if len(parts) != size:
        raise ParseError(f"{where}: key '{key}' must name {size} labels")
    try:
        return tuple(cat_labels.index(p) for p in parts)
    except ValueError as e:
        raise ParseError(f"{where}: key '{key}' references an unknown label") from e


def _label(labels, name, where):
    if name not in labels:
        raise ParseError(f"{where}: unknown label '{name}'")
    return labels.index(name)


def _parse_fusion(labels, section):
    n = len(labels)
    N = np.zeros((n, n, n), dtype=int)
    for i in range(n):
        N[0, i, i] = N[i, 0, i] = 1
    for key, value in (section or {}).items():
        a, b, c = _key(labels, key, 3, "fusion")
        if not isinstance(value, int) or value < 0:
            raise ParseError(f"fusion: multiplicity for '{key}' must be a nonnegative integer")
        if (a == 0 or b == 0) and value != N[a, b, c]:
            raise ParseError(f"fusion: '{key}' contradicts the unit rules")
        N[a, b, c] = value
    return N


def _parse_fmoves(labels, N, section):
    n = len(labels)
    explicit = {}
    for key, entries in (section or {}).items():
        a, b, c, d = _key(labels, key, 4, "F")
        left = left_basis(N, a, b, c, d)
        right = right_basis(N, a, b, c, d)
        move = FMove.build(left, right, np.zeros((len(left), len(right)), dtype=complex))
        for entry in entries:
            if len(entry) == 4:
                e, f, re, im = entry
                src, dst = (_label(labels, e, "F"), 0, 0), (_label(labels, f, "F"), 0, 0)
            elif len(entry) == 8:
                e, alpha, beta, f, gamma, delta, re, im = entry
                src = (_label(labels, e, "F"), int(alpha), int(beta))
                dst = (_label(labels, f, "F"), int(gamma), int(delta))
            else:
                raise ParseError(f"F: entry {entry!r} of '{key}' must have 4 or 8 fields")
            if src not in move.left_pos or dst not in move.right_pos:
                raise ParseError(f"F: entry {entry!r} of '{key}' is not an admissible tree pair")
            move.matrix[move.left_pos[src], move.right_pos[dst]] = _complex((re, im), f"F[{key}]")
        explicit[(a, b, c, d)] = move

    fmoves = {}
    for a, b, c, d in itertools.product(range(n), repeat=4):
        left = left_basis(N, a, b, c, d)
        if not left and not right_basis(N, a, b, c, d):
            continue
        if (a, b, c, d) in explicit:
            fmoves[(a, b, c, d)] = explicit[(a, b, c, d)]
        elif 0 in (a, b, c):
            fmoves[(a, b, c, d)] = unit_fmove(N, a, b, c, d)
        elif len(left) == 1 and len(right_basis(N, a, b, c, d)) == 1:
            fmoves[(a, b, c, d)] = FMove.build(left, right_basis(N, a, b, c, d), np.ones((1, 1)))
        else:
            names = ",".join(labels[x] for x in (a, b, c, d))
            raise ParseError(f"F: missing block '{names}' of size {len(left)}")
    return fmoves


def _parse_rsymbols(labels, N, section):
    n = len(labels)
    explicit = {}
    for key, entries in (section or {}).items():
        a, b, c = _key(labels, key, 3, "R")
        size = N[a, b, c]
        if size == 0:
            raise ParseError(f"R: '{key}' is not an admissible vertex")
        r = np.zeros((size, size), dtype=complex)
        for entry in entries:
            if len(entry) == 2:
                mu, nu, re, im = 0, 0, *entry
            elif len(entry) == 4:
                mu, nu, re, im = entry
            else:
                raise ParseError(f"R: entry {entry!r} of '{key}' must have 2 or 4 fields")
            if not (0 <= int(mu) < size and 0 <= int(nu) < size):
                raise ParseError(f"R: multiplicity index out of range in '{key}'")
            r[int(mu), int(nu)] = _complex((re, im), f"R[{key}]")
        explicit[(a, b, c)] = r

    rsymbols = {}
    for a, b, c in itertools.product(range(n), repeat=3):
        if N[a, b, c] == 0:
            continue
        if (a, b, c) in explicit:
            rsymbols[(a, b, c)] = explicit[(a, b, c)]
        elif a == 0 or b == 0:
            rsymbols[(a, b, c)] = np.eye(N[a, b, c], dtype=complex)
        else:
            names = ",".join(labels[x] for x in (a, b, c))
            raise ParseError(f"R: missing block '{names}'")
    return rsymbols


def parse_category(doc: dict, tol: float = DEFAULT_TOLERANCE) -> CategoryData:
    """Build CategoryData from a decoded category document"""
    if not isinstance(doc, dict):
        raise ParseError("category document must be an object")
    schema = doc.get("schema", CATEGORY_SCHEMA)
    if schema != CATEGORY_SCHEMA:
        raise ParseError(f"unsupported schema '{schema}', expected '{CATEGORY_SCHEMA}'")

    labels = doc.get("labels")
    if not labels or not all(isinstance(x, str) for x in labels) or len(set(labels)) != len(labels):
        raise ParseError("labels must be a nonempty list of distinct names, unit first")

    duals_section = doc.get("duals", {labels[0]: labels[0]} if len(labels) == 1 else None)
    if not isinstance(duals_section, dict):
        raise ParseError("duals must map every label to its dual")
    dual = []
    for name in labels:
        if name not in duals_section:
            raise ParseError(f"duals: no dual given for '{name}'")
        dual.append(_label(labels, duals_section[name], "duals"))
    if dual[0] != 0 or any(dual[dual[i]] != i for i in range(len(labels))):
        raise ParseError("duals must be an involution fixing the unit")

    N = _parse_fusion(labels, doc.get("fusion"))
    fmoves = _parse_fmoves(labels, N, doc.get("F"))
    rsymbols = _parse_rsymbols(labels, N, doc.get("R"))

    pivotal = np.ones(len(labels), dtype=complex)
    for name, pair in (doc.get("pivotal") or {}).items():
        pivotal[_label(labels, name, "pivotal")] = _complex(pair, f"pivotal[{name}]")

    return CategoryData(
        name=doc.get("name", "unnamed"),
        labels=labels,
        dual=dual,
        N=N,
        fmoves=fmoves,
        rsymbols=rsymbols,
        pivotal=pivotal,
        tol=tol,
    )


def read_category(path: str, tol: float = DEFAULT_TOLERANCE) -> CategoryData:
    """Parse a category file without running the axiom checks"""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
    except OSError as e:
        raise ParseError(f"cannot read category file '{path}': {e}") from e
    except json.JSONDecodeError as e:
        raise ParseError(f"category file '{path}' is not valid JSON: {e}") from e
    return parse_category(doc, tol)


def load_category(path: str, tol: float = DEFAULT_TOLERANCE) -> CategoryData:
    """Parse, validate every axiom and cache derived quantities"""
    from src.mtc_core.axioms import check_category

    cat = read_category(path, tol)
    for check in check_category(cat):
        if not check.passed:
            logger.error(f"{cat.name}: {check.name} failed ({check.detail})")
            raise ConsistencyError(check.name, check.residual, check.detail)
    cat.touch()
    logger.info(f"Loaded category {cat.name} with {cat.rank} simple objects, D² = {cat.global_dim_sq.real:.6f}")
    return cat
