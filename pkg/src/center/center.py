"""Drinfeld center through its C ⊠ C̄ realization
Centre objects are words whose letters braid either over or under the outside world
"""

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy.linalg import null_space

from config.settings import rank_cutoff
from src.diagram.objects import Obj
from src.errors import ShapeMismatch

Levels = Tuple[bool, ...]


@dataclass(frozen=True)
class CenterObject:
    """A carrier in C with one over (True) / under (False) flag per letter of every summand"""
    carrier: Obj
    levels: Tuple[Levels, ...]

    def __post_init__(self):
        levels = tuple(tuple(bool(x) for x in lv) for lv in self.levels)
        object.__setattr__(self, "levels", levels)
        if len(levels) != len(self.carrier) or any(
            len(lv) != len(w) for lv, w in zip(levels, self.carrier.summands)
        ):
            raise ShapeMismatch(f"levels {levels} do not match carrier {self.carrier.summands}")

    @classmethod
    def unit(cls):
        return cls(Obj.unit(), ((),))

    @classmethod
    def over(cls, obj):
        """Image of C -> Z(C) under the braiding"""
        return cls(obj, tuple((True,) * len(w) for w in obj.summands))

    @classmethod
    def under(cls, obj):
        """Image of C̄ -> Z(C) under the inverse braiding"""
        return cls(obj, tuple((False,) * len(w) for w in obj.summands))

    def __len__(self):
        return len(self.carrier)

    def __add__(self, other):
        return CenterObject(self.carrier + other.carrier, self.levels + other.levels)

    def tensor(self, other):
        return CenterObject(
            self.carrier.tensor(other.carrier),
            tuple(u + v for u in self.levels for v in other.levels),
        )

    def summand(self, k):
        return CenterObject(self.carrier.summand(k), (self.levels[k],))

    def dual(self, dual):
        return CenterObject(self.carrier.dual(dual), tuple(tuple(reversed(lv)) for lv in self.levels))

    def over_under(self, k):
        """Letters of summand k split into the over and the under word"""
        word, lv = self.carrier.summands[k], self.levels[k]
        return (
            tuple(x for x, up in zip(word, lv) if up),
            tuple(x for x, up in zip(word, lv) if not up),
        )


def center_embed(i, j):
    """U_i ⊠ U_j as U_i ⊗ U_j with U_i braiding over and U_j under"""
    return CenterObject(Obj.word(i, j), ((True, False),))


class DrinfeldCenter:
    """Half-braidings, centre hom spaces and the projector onto them"""

    def __init__(self, diagram):
        self.d = diagram
        self.cat = diagram.cat
        self.n = diagram.n
        self.logger = logging.getLogger("mtc_engine.center")

    # Objects

    def simples(self):
        return [(i, j) for i in range(self.n) for j in range(self.n)]

    def dual(self, x):
        return x.dual(self.cat.dual)

    # Half-braidings

    def half_braiding(self, x, a):
        """β_{X,A}: X ⊗ A -> A ⊗ X"""
        parts = {}
        for k, (u, lv) in enumerate(zip(x.carrier.summands, x.levels)):
            for l, v in enumerate(a.summands):
                parts[(l * len(x) + k, k * len(a) + l)] = self.d.braid_words(u, v, lv)
        return self.d.assemble(x.carrier.tensor(a), a.tensor(x.carrier), parts)

    def half_braiding_inv(self, x, a):
        """β_{X,A}^{-1}: A ⊗ X -> X ⊗ A"""
        parts = {}
        for k, v in enumerate(a.summands):
            for l, (u, lv) in enumerate(zip(x.carrier.summands, x.levels)):
                under = tuple(not up for up in lv)
                parts[(l * len(a) + k, k * len(x) + l)] = self.d.braid_words(v, u, [under] * len(v))
        return self.d.assemble(a.tensor(x.carrier), x.carrier.tensor(a), parts)

    def braiding(self, x, y):
        """Braiding of Z(C): the half-braiding of X evaluated on the carrier of Y"""
        return self.half_braiding(x, y.carrier)

    def braiding_inv(self, x, y):
        """Y ⊗ X -> X ⊗ Y, inverse of the braiding of X past Y"""
        return self.half_braiding_inv(x, y.carrier)

    def hexagon_residual(self, x, b, c):
        """β_{X,B⊗C} against (id_B ⊗ β_{X,C}) ∘ (β_{X,B} ⊗ id_C)"""
        d = self.d
        lhs = self.half_braiding(x, b.tensor(c))
        rhs = d.tensor(d.identity(b), self.half_braiding(x, c)) @ d.tensor(self.half_braiding(x, b), d.identity(c))
        return lhs.distance(rhs)

    def naturality_residual(self, x, f):
        """(f ⊗ id_X) ∘ β_{X,A} against β_{X,B} ∘ (id_X ⊗ f) for f: A -> B"""
        d = self.d
        lhs = d.tensor(f, d.identity(x.carrier)) @ self.half_braiding(x, f.source)
        rhs = self.half_braiding(x, f.target) @ d.tensor(d.identity(x.carrier), f)
        return lhs.distance(rhs)

    # Centre morphisms

    def centrality_residual(self, f, x, y):
        """Largest failure of (id_a ⊗ f) ∘ β_{X,a} = β_{Y,a} ∘ (f ⊗ id_a) over simples a"""
        d = self.d
        worst = 0.0
        for a in range(self.n):
            probe = Obj.simple(a)
            lhs = d.tensor(d.identity(probe), f) @ self.half_braiding(x, probe)
            rhs = self.half_braiding(y, probe) @ d.tensor(f, d.identity(probe))
            worst = max(worst, lhs.distance(rhs))
        return worst

    def centrality_matrix(self, x, y):
        """Linear constraints on vec(f) for f in hom_C(X, Y) to be a centre morphism"""
        d = self.d
        size = d.hom_dim(x.carrier, y.carrier)
        rows = []
        for a in range(self.n):
            probe = Obj.simple(a)
            bx, by = self.half_braiding(x, probe), self.half_braiding(y, probe)
            ida = d.identity(probe)
            columns = []
            for t in range(size):
                unit = np.zeros(size, dtype=complex)
                unit[t] = 1.0
                f = d.devectorize(unit, x.carrier, y.carrier)
                columns.append((d.tensor(ida, f) @ bx - by @ d.tensor(f, ida)).vector())
            rows.append(np.array(columns).reshape(size, -1).T)
        return np.vstack(rows)

    def hom_z(self, x, y, tol=None):
        """Basis of hom_{Z(C)}(X, Y) as a null space of the centrality constraints"""
        tol = self.cat.tol if tol is None else tol
        size = self.d.hom_dim(x.carrier, y.carrier)
        if size == 0:
            return []
        constraints = self.centrality_matrix(x, y)
        if constraints.shape[0] == 0:
            kernel = np.eye(size, dtype=complex)
        else:
            kernel = null_space(constraints, rcond=rank_cutoff(tol))
        self.logger.debug(f"hom_Z: {kernel.shape[1]} of {size} dimensions are central")
        return [self.d.devectorize(kernel[:, k], x.carrier, y.carrier) for k in range(kernel.shape[1])]

    def hom_z_dim(self, x, y, tol=None):
        return len(self.hom_z(x, y, tol))

    def dual_basis(self, basis, x, y):
        """Morphisms c^α in hom_Z(Y, X) with c^α ∘ b_β = δ_{αβ} id_X for X simple"""
        if not basis:
            return []
        candidates = self.hom_z(y, x)
        if not candidates:
            return []
        dim_x = self.d.trace(self.d.identity(x.carrier))
        gram = np.array([[self.d.pairing(b, c) / dim_x for c in candidates] for b in basis])
        coeffs = np.linalg.pinv(gram)
        duals = []
        for alpha in range(len(basis)):
            total = self.d.zero(y.carrier, x.carrier)
            for gamma, c in enumerate(candidates):
                total = total + coeffs[gamma, alpha] * c
            duals.append(total)
        return duals

    def multiplicity(self, i, j, y):
        """Σ_α (b_α, b^α) / (d_i d_j) over a basis of hom_Z((i,j), Y)"""
        x = center_embed(i, j)
        basis = self.hom_z(x, y)
        duals = self.dual_basis(basis, x, y)
        dims = self.cat.dims
        return float(np.real(sum(self.d.pairing(b, c) for b, c in zip(basis, duals)) / (dims[i] * dims[j])))

    # Ribbon structure

    def twist(self, x):
        """θ_X as the curl of the half-braiding of X with itself"""
        return self.d.partial_trace(self.braiding(x, x), x.carrier, x.carrier, x.carrier, side="right")

    # Projector onto centre morphisms

    def project(self, f, x, y):
        """Σ_k (d_k/D²) k-loop around f, threaded through the half-braidings of X and Y"""
        d = self.d
        if f.source != x.carrier or f.target != y.carrier:
            raise ShapeMismatch("project: f does not map X to Y")
        total = d.zero(x.carrier, y.carrier)
        for k in range(self.n):
            strand = Obj.simple(k)
            dual = d.dual_obj(strand)
            loop = d.compose(
                d.tensor(d.ev(strand), d.identity(y.carrier)),
                d.tensor(d.identity(dual), self.half_braiding(y, strand)),
                d.tensor(d.tensor(d.identity(dual), f), d.identity(strand)),
                d.tensor(d.identity(dual), self.half_braiding_inv(x, strand)),
                d.tensor(d.coev_tilde(strand), d.identity(x.carrier)),
            )
            total = total + (self.cat.dims[k] / self.cat.global_dim_sq) * loop
        return total

    def projector_matrix(self, x, y):
        """Matrix of project() on vectorized hom_C(X, Y)"""
        d = self.d
        size = d.hom_dim(x.carrier, y.carrier)
        columns = []
        for t in range(size):
            unit = np.zeros(size, dtype=complex)
            unit[t] = 1.0
            columns.append(self.project(d.devectorize(unit, x.carrier, y.carrier), x, y).vector())
        return np.array(columns).T if columns else np.zeros((0, 0), dtype=complex)

    def projector_P(self, x):
        """The projector on hom_C(1, X)"""
        return self.projector_matrix(CenterObject.unit(), x)
