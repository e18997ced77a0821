"""Center Suite
Half-braidings, the functor L with its structure maps, the projector and the Z/Y maps
"""

import itertools
import logging
from functools import partial
from typing import List

import numpy as np

from src.center.block_maps import coupon_basis, map_Z, y_after_z_residual, z_membership_residual
from src.center.center import CenterObject, center_embed
from src.sewing.dimensions import stringnet_dim, stringnet_dim_bruteforce
from src.sewing.gluing import GluingSpec, z_gluing_residual
from src.diagram.objects import Obj, tensor_all
from src.reporting.report import CheckRecord
from src.suites.suite_manager import RunContext, gather_checks

MAX_FACTORS = 3


class CenterSuite:
    """Z(C) realized through C ⊠ C̄ and the Frobenius functor L"""

    def __init__(self, context: RunContext):
        self.context = context
        self.name = "center"
        self.logger = logging.getLogger("mtc_engine.suites.center")
        cat = context.cat
        self.letters = [Obj.simple(k) for k in range(cat.rank)]
        self.simples = [center_embed(i, j) for i, j in context.center.simples()]
        last = Obj.simple(cat.rank - 1)
        self.boundaries = {"1": Obj.unit(), f"1⊕{cat.labels[-1]}": Obj.unit() + last}
        self.probes = [Obj.unit(), last]

    def _stream(self, index: int) -> np.random.Generator:
        return np.random.default_rng([self.context.config.seed, 100 + index])

    def hexagon(self):
        center, worst = self.context.center, 0.0
        for x in self.simples:
            for b, c in itertools.product(self.letters, repeat=2):
                worst = max(worst, center.hexagon_residual(x, b, c))
        return worst, f"{len(self.simples)} centre simples against letter pairs"

    def naturality(self, rng):
        ctx, worst = self.context, 0.0
        words = self.letters + [a.tensor(b) for a, b in itertools.product(self.letters, repeat=2)]
        for x in self.simples:
            a, b = (words[k] for k in rng.integers(0, len(words), size=2))
            f = ctx.diagram.random_morphism(a, b, rng)
            worst = max(worst, ctx.center.naturality_residual(x, f))
        return worst, "(f⊗id)β = β(id⊗f) on random f"

    def identity_central(self):
        center, d = self.context.center, self.context.diagram
        worst = max(center.centrality_residual(d.identity(x.carrier), x, x) for x in self.simples)
        return worst, "id_X is a centre morphism"

    def functoriality(self, rng):
        ctx, lf, d, worst = self.context, self.context.lf, self.context.diagram, 0.0
        for a in self.letters:
            b, c = self.letters[rng.integers(0, len(self.letters))], self.letters[rng.integers(0, len(self.letters))]
            f, g = d.random_morphism(a, b.tensor(c), rng), d.random_morphism(b.tensor(c), a, rng)
            worst = max(
                worst,
                lf.mor(g @ f).distance(lf.mor(g) @ lf.mor(f)),
                lf.mor(d.identity(a)).distance(d.identity(lf.obj(a).carrier)),
            )
            if f.norm():
                worst = max(worst, abs(lf.faithfulness_ratio(f) - 1.0))
        return worst, "L(gf) = L(g)L(f), L(id) = id, ‖L f‖ = ‖f‖"

    def lax_coherence(self):
        lf, worst = self.context.lf, 0.0
        for a, b, c in itertools.product(self.probes, repeat=3):
            worst = max(
                worst,
                lf.associativity_residual(a, b, c),
                lf.coassociativity_residual(a, b, c),
                lf.frobenius_residual(a, b, c),
            )
        return worst, "associativity, coassociativity and Frobenius squares of (φ, ψ)"

    def unit_and_separability(self):
        lf, worst = self.context.lf, 0.0
        for a in self.letters:
            worst = max(worst, lf.unit_residual(a))
            for b in self.probes:
                worst = max(worst, lf.separability_residual(a, b))
        return worst, "unit laws and φψ = id"

    def structure_naturality(self, rng):
        ctx, worst = self.context, 0.0
        for a, b in itertools.product(self.probes, repeat=2):
            f = ctx.diagram.random_morphism(a, b, rng)
            g = ctx.diagram.random_morphism(b, a, rng)
            worst = max(worst, ctx.lf.naturality_residual(f, g))
        return worst, "φ and ψ natural on random morphisms"

    def zigzag(self):
        lf = self.context.lf
        return max(lf.zigzag_residual(a) for a in self.letters), "ev_L and coev_L straighten"

    def scalar_loop(self):
        cat = self.context.cat
        value = self.context.lf.scalar_loop()
        return abs(value - cat.global_dim_sq), f"ψ_1 φ_1 = {value.real:.6f}, D² = {cat.global_dim_sq.real:.6f}"

    def projector(self, rng):
        ctx = self.context
        d, lf, center = ctx.diagram, ctx.lf, ctx.center
        worst, traces = 0.0, []
        for a in self.probes:
            la = lf.obj(a)
            p = center.projector_P(la)
            worst = max(worst, np.max(np.abs(p @ p - p)) if p.size else 0.0)
            image = center.hom_z_dim(CenterObject.unit(), la)
            worst = max(worst, abs(np.trace(p) - image))
            traces.append(image)
            b = self.probes[rng.integers(0, len(self.probes))]
            f = d.random_morphism(a, b, rng)
            g = d.random_morphism(Obj.unit(), la.carrier, rng)
            moved = center.project(lf.mor(f) @ g, CenterObject.unit(), lf.obj(b))
            worst = max(worst, moved.distance(lf.mor(f) @ center.project(g, CenterObject.unit(), la)))
        return worst, f"P² = P, rank P = dim hom_Z {traces}, P commutes with L(f)"

    def y_after_z(self, boundary: Obj):
        d, lf = self.context.diagram, self.context.lf
        dual = d.dual_obj(boundary)
        worst, count = 0.0, 0
        for n in range(1, MAX_FACTORS + 1):
            factors = [boundary if k % 2 == 0 else dual for k in range(n)]
            basis = coupon_basis(lf, tensor_all(factors))
            for f in basis:
                worst = max(worst, y_after_z_residual(lf, f, factors))
            count += len(basis)
            if n == 2 and basis:
                worst = max(worst, z_membership_residual(lf, map_Z(lf, basis[-1], factors), factors))
        return worst, f"{count} basis coupons over words of up to {MAX_FACTORS} factors"

    def gluing(self, rng):
        d, lf = self.context.diagram, self.context.lf
        x = self.probes[-1]
        spec = GluingSpec(glued=x, head=[x], tail=[x])
        f = d.random_morphism(Obj.unit(), x.tensor(x), rng)
        g = d.random_morphism(Obj.unit(), d.dual_obj(x).tensor(x), rng)
        return z_gluing_residual(lf, f, g, spec), "glue(Z f, Z g) = Z(glue(f, g)) across one boundary"

    def dimensions(self):
        cat, d = self.context.cat, self.context.diagram
        mismatches, cases = [], 0
        for genus in (0, 1):
            for length in (1, 2):
                for boundary in itertools.product(self.simples, repeat=length):
                    fast, slow = stringnet_dim(cat, genus, boundary), stringnet_dim_bruteforce(d, genus, boundary)
                    cases += 1
                    if fast != slow:
                        mismatches.append((genus, [x.carrier.summands for x in boundary], fast, slow))
        return float(len(mismatches)), f"{cases} cases, mismatches {mismatches[:3]}"

    async def run(self) -> List[CheckRecord]:
        checks = [
            ("half-braiding hexagon", self.hexagon),
            ("half-braiding naturality", partial(self.naturality, self._stream(1))),
            ("identity is central", self.identity_central),
            ("L functoriality", partial(self.functoriality, self._stream(2))),
            ("lax/colax coherence", self.lax_coherence),
            ("unit and separability", self.unit_and_separability),
            ("φ/ψ naturality", partial(self.structure_naturality, self._stream(3))),
            ("L duality zig-zag", self.zigzag),
            ("ψ_1 φ_1 = D²", self.scalar_loop),
            ("projector", partial(self.projector, self._stream(4))),
            ("Z-gluing", partial(self.gluing, self._stream(5))),
            ("string-net dimension oracle", self.dimensions),
        ]
        checks += [(f"Y∘Z = id, H = {label}", partial(self.y_after_z, h)) for label, h in self.boundaries.items()]
        return await gather_checks(self.name, checks, self.context.tol)
