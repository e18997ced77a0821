"""Adjoint L: C -> Z(C), L(A) = ⊕_i A ⊗ U_i* ⊗ U_i
Carries the lax structure φ, the colax structure ψ and the duality of L-objects
"""

import logging
from typing import Dict, Tuple

import numpy as np

from src.center.center import CenterObject
from src.diagram.morphism import Morphism
from src.diagram.objects import Obj


class LFunctor:
    """L on objects and morphisms, with φ: L(A)⊗L(B) -> L(A⊗B) and ψ the other way"""

    def __init__(self, center):
        self.center = center
        self.d = center.d
        self.cat = center.cat
        self.n = center.n
        self.logger = logging.getLogger("mtc_engine.lfunctor")
        self._lax: Dict[Tuple[int, int, int], Morphism] = {}
        self._colax: Dict[Tuple[int, int, int], Morphism] = {}

    # Objects and morphisms

    def obj(self, a):
        """Summand (i, k) of L(A) sits at i·|A| + k; A and U_i* braid over, U_i under"""
        dual = self.cat.dual
        words, levels = [], []
        for i in range(self.n):
            for w in a.summands:
                words.append(w + (dual[i], i))
                levels.append((True,) * len(w) + (True, False))
        return CenterObject(Obj(tuple(words)), tuple(levels))

    def mor(self, f):
        """L(f) = ⊕_i f ⊗ id_{U_i* ⊗ U_i}"""
        dual = self.cat.dual
        return self.d.direct_sum([
            self.d.tensor(f, self.d.identity(Obj.word(dual[i], i))) for i in range(self.n)
        ])

    # Building blocks on simples

    def _pair_cap(self, i, j):
        """(ev_i ⊗ ev_j) ∘ (id_{i*} ⊗ β_{j*,i} ⊗ id_j): i* j* i j -> 1"""
        d, dual = self.d, self.cat.dual
        return d.tensor(d.ev(Obj.simple(i)), d.ev(Obj.simple(j))) @ d.embed(
            (dual[i],), d.braiding(Obj.simple(dual[j]), Obj.simple(i)), (j,)
        )

    def _pair_cup(self, i, j):
        """(id_{i*} ⊗ β^{-1}_{j*,i} ⊗ id_j) ∘ (coev~_i ⊗ coev~_j): 1 -> i* j* i j"""
        d, dual = self.d, self.cat.dual
        return d.embed((dual[i],), d.braiding_inv(Obj.simple(i), Obj.simple(dual[j])), (j,)) @ d.tensor(
            d.coev_tilde(Obj.simple(i)), d.coev_tilde(Obj.simple(j))
        )

    def _merge(self, i, j, k):
        """Σ_α x_α ⊗ b_α: i* j* i j -> k* k"""
        cached = self._lax.get((i, j, k))
        if cached is not None:
            return cached
        d, dual = self.d, self.cat.dual
        pair, kk = Obj.word(i, j), Obj.simple(k)
        cap = self._pair_cap(i, j)
        lead = Obj.word(dual[i], dual[j])
        total = None
        for up, down in zip(d.hom_basis(k, pair), d.composition_dual_basis(k, pair)):
            x = d.tensor(cap @ d.tensor(d.identity(lead), up), d.identity(Obj.simple(dual[k])))
            x = x @ d.tensor(d.identity(lead), d.coev(kk))
            term = d.tensor(x, down)
            total = term if total is None else total + term
        self._lax[(i, j, k)] = total
        return total

    def _split(self, i, j, k):
        """(d_i d_j / d_k D²) Σ_α y_α ⊗ b^α: k* k -> i* j* i j"""
        cached = self._colax.get((i, j, k))
        if cached is not None:
            return cached
        d, dual, dims = self.d, self.cat.dual, self.cat.dims
        pair, kk = Obj.word(i, j), Obj.simple(k)
        cup = self._pair_cup(i, j)
        lead = Obj.word(dual[i], dual[j])
        total = None
        for up, down in zip(d.hom_basis(k, pair), d.composition_dual_basis(k, pair)):
            y = d.tensor(d.tensor(d.identity(lead), down) @ cup, d.identity(Obj.simple(dual[k])))
            y = d.tensor(d.identity(lead), d.ev_tilde(kk)) @ y
            term = d.tensor(y, up)
            total = term if total is None else total + term
        total = total * (dims[i] * dims[j] / (dims[k] * self.cat.global_dim_sq))
        self._colax[(i, j, k)] = total
        return total

    def _phi_words(self, wa, wb, i, j, k):
        d, dual = self.d, self.cat.dual
        cross_i = d.braiding_inv(Obj.simple(i), Obj.word(*wb, dual[j]))
        cross_dual = d.braiding_inv(Obj.simple(dual[i]), Obj.word(*wb))
        return d.compose(
            d.embed(wa + wb, self._merge(i, j, k), ()),
            d.embed(wa, cross_dual, (dual[j], i, j)),
            d.embed(wa + (dual[i],), cross_i, (j,)),
        )

    def _psi_words(self, wa, wb, i, j, k):
        d, dual = self.d, self.cat.dual
        cross_i = d.braiding(Obj.word(*wb, dual[j]), Obj.simple(i))
        cross_dual = d.braiding(Obj.word(*wb), Obj.simple(dual[i]))
        return d.compose(
            d.embed(wa + (dual[i],), cross_i, (j,)),
            d.embed(wa, cross_dual, (dual[j], i, j)),
            d.embed(wa + wb, self._split(i, j, k), ()),
        )

    # Structure maps

    def phi(self, a, b):
        """φ_{A,B}: L(A) ⊗ L(B) -> L(A ⊗ B)"""
        la, lb = self.obj(a).carrier, self.obj(b).carrier
        target = self.obj(a.tensor(b)).carrier
        na, nb = len(a), len(b)
        parts = {}
        for i in range(self.n):
            for j in range(self.n):
                for k in self.cat.channels(i, j):
                    for ka, wa in enumerate(a.summands):
                        for kb, wb in enumerate(b.summands):
                            source_index = (i * na + ka) * len(lb) + (j * nb + kb)
                            target_index = k * na * nb + ka * nb + kb
                            parts[(target_index, source_index)] = self._phi_words(wa, wb, i, j, k)
        return self._sum_parts(la.tensor(lb), target, parts)

    def psi(self, a, b):
        """ψ_{A,B}: L(A ⊗ B) -> L(A) ⊗ L(B)"""
        la, lb = self.obj(a).carrier, self.obj(b).carrier
        source = self.obj(a.tensor(b)).carrier
        na, nb = len(a), len(b)
        parts = {}
        for i in range(self.n):
            for j in range(self.n):
                for k in self.cat.channels(i, j):
                    for ka, wa in enumerate(a.summands):
                        for kb, wb in enumerate(b.summands):
                            target_index = (i * na + ka) * len(lb) + (j * nb + kb)
                            source_index = k * na * nb + ka * nb + kb
                            parts[(target_index, source_index)] = self._psi_words(wa, wb, i, j, k)
        return self._sum_parts(source, la.tensor(lb), parts)

    def _sum_parts(self, source, target, parts):
        if not parts:
            return self.d.zero(source, target)
        return self.d.assemble(source, target, parts)

    def phi_unit(self):
        """φ_1: 1 -> L(1)

        Supported on the unit pair (0, 0) only, as the coevaluation of U_0; every
        other summand (i*, i) of L(1) gets zero. ψ_1 follows the same convention.
        """
        d = self.d
        target = self.obj(Obj.unit()).carrier
        return d.assemble(Obj.unit(), target, {(0, 0): d.coev(Obj.simple(0))})

    def psi_unit(self):
        """ψ_1: L(1) -> 1, D² times the projection onto the (0, 0) summand"""
        d = self.d
        source = self.obj(Obj.unit()).carrier
        cap = d.ev_tilde(Obj.simple(0)) * self.cat.global_dim_sq
        return d.assemble(source, Obj.unit(), {(0, 0): cap})

    # Adjunction

    def counit(self, a):
        """L(A) -> A, ⊕_i id_A ⊗ ev_i"""
        d = self.d
        source = self.obj(a).carrier
        parts = {}
        for i in range(self.n):
            cap = d.ev(Obj.simple(i))
            for k, w in enumerate(a.summands):
                parts[(k, i * len(a) + k)] = d.tensor(d.identity(Obj((w,))), cap)
        return d.assemble(source, a, parts)

    def unit(self, a):
        """A -> L(A), ⊕_i (d_i / D²) id_A ⊗ coev~_i"""
        d = self.d
        target = self.obj(a).carrier
        parts = {}
        for i in range(self.n):
            cup = d.coev_tilde(Obj.simple(i)) * (self.cat.dims[i] / self.cat.global_dim_sq)
            for k, w in enumerate(a.summands):
                parts[(i * len(a) + k, k)] = d.tensor(d.identity(Obj((w,))), cup)
        return d.assemble(a, target, parts)

    # Duality of L-objects

    def ev_L(self, a):
        """L(A*) ⊗ L(A) -> 1 as ψ_1 ∘ L(ev_A) ∘ φ_{A*,A}"""
        ad = self.d.dual_obj(a)
        return self.psi_unit() @ self.mor(self.d.ev(a)) @ self.phi(ad, a)

    def coev_L(self, a):
        """1 -> L(A) ⊗ L(A*) as ψ_{A,A*} ∘ L(coev_A) ∘ φ_1"""
        ad = self.d.dual_obj(a)
        return self.psi(a, ad) @ self.mor(self.d.coev(a)) @ self.phi_unit()

    def zigzag_residual(self, a):
        """Both straightening identities for (ev_L, coev_L)"""
        d = self.d
        la = self.obj(a).carrier
        lad = self.obj(d.dual_obj(a)).carrier
        ev, coev = self.ev_L(a), self.coev_L(a)
        first = d.tensor(d.identity(la), ev) @ d.tensor(coev, d.identity(la))
        second = d.tensor(ev, d.identity(lad)) @ d.tensor(d.identity(lad), coev)
        return max(first.distance(d.identity(la)), second.distance(d.identity(lad)))

    # Coherence

    def associativity_residual(self, a, b, c):
        """φ_{AB,C} ∘ (φ_{A,B} ⊗ id) against φ_{A,BC} ∘ (id ⊗ φ_{B,C})"""
        d = self.d
        la, lc = self.obj(a).carrier, self.obj(c).carrier
        lhs = self.phi(a.tensor(b), c) @ d.tensor(self.phi(a, b), d.identity(lc))
        rhs = self.phi(a, b.tensor(c)) @ d.tensor(d.identity(la), self.phi(b, c))
        return lhs.distance(rhs)

    def coassociativity_residual(self, a, b, c):
        d = self.d
        la, lc = self.obj(a).carrier, self.obj(c).carrier
        lhs = d.tensor(self.psi(a, b), d.identity(lc)) @ self.psi(a.tensor(b), c)
        rhs = d.tensor(d.identity(la), self.psi(b, c)) @ self.psi(a, b.tensor(c))
        return lhs.distance(rhs)

    def frobenius_residual(self, a, b, c):
        """(id ⊗ φ_{B,C}) ∘ (ψ_{A,B} ⊗ id) against ψ_{A,BC} ∘ φ_{AB,C}"""
        d = self.d
        lc = self.obj(c).carrier
        la = self.obj(a).carrier
        lhs = d.tensor(d.identity(la), self.phi(b, c)) @ d.tensor(self.psi(a, b), d.identity(lc))
        rhs = self.psi(a, b.tensor(c)) @ self.phi(a.tensor(b), c)
        return lhs.distance(rhs)

    def unit_residual(self, a):
        """φ_{1,A} ∘ (φ_1 ⊗ id) = id and (ψ_1 ⊗ id) ∘ ψ_{1,A} = id on L(A)"""
        d = self.d
        la = self.obj(a).carrier
        unit = Obj.unit()
        lax = self.phi(unit, a) @ d.tensor(self.phi_unit(), d.identity(la))
        colax = d.tensor(self.psi_unit(), d.identity(la)) @ self.psi(unit, a)
        return max(lax.distance(d.identity(la)), colax.distance(d.identity(la)))

    def separability_residual(self, a, b):
        lab = self.obj(a.tensor(b)).carrier
        return (self.phi(a, b) @ self.psi(a, b)).distance(self.d.identity(lab))

    def naturality_residual(self, f, g):
        """L(f⊗g) ∘ φ against φ ∘ (L f ⊗ L g), and the same for ψ"""
        d = self.d
        lax = self.mor(d.tensor(f, g)) @ self.phi(f.source, g.source)
        lax_other = self.phi(f.target, g.target) @ d.tensor(self.mor(f), self.mor(g))
        colax = self.psi(f.target, g.target) @ self.mor(d.tensor(f, g))
        colax_other = d.tensor(self.mor(f), self.mor(g)) @ self.psi(f.source, g.source)
        return max(lax.distance(lax_other), colax.distance(colax_other))

    def scalar_loop(self):
        """Close the unit loop; returns D²"""
        return complex((self.psi_unit() @ self.phi_unit()).scalar())

    def faithfulness_ratio(self, f):
        """‖L(f)‖ / ‖f‖; L only repeats blocks so the ratio is 1 for f != 0"""
        norm = f.norm()
        return self.mor(f).norm() / norm if norm else float(np.nan)
