"""Diagram Suite
Laws of the graphical calculus on random morphisms between short words
"""

import itertools
import logging
from functools import partial
from typing import List

import numpy as np

from src.diagram.objects import Obj
from src.reporting.report import CheckRecord
from src.suites.suite_manager import RunContext, gather_checks

MAX_LAW_TRIALS = 10


class DiagramSuite:
    """Category laws, interchange, zig-zags, braiding and twist, completeness"""

    def __init__(self, context: RunContext):
        self.context = context
        self.name = "diagram"
        self.logger = logging.getLogger("mtc_engine.suites.diagram")
        self.trials = min(context.config.trials, MAX_LAW_TRIALS)
        cat = context.cat
        self.words = [Obj.word(*w) for length in (1, 2) for w in itertools.product(range(cat.rank), repeat=length)]
        rng = context.rng
        self.samples = [
            tuple(self.words[k] for k in rng.integers(0, len(self.words), size=4)) for _ in range(self.trials)
        ]

    def _stream(self, index: int) -> np.random.Generator:
        """One generator per check"""
        return np.random.default_rng([self.context.config.seed, index])

    def _random(self, rng, source, target):
        return self.context.diagram.random_morphism(source, target, rng)

    def composition(self, rng):
        d, worst = self.context.diagram, 0.0
        for a, b, c, e in self.samples:
            f, g, h = self._random(rng, a, b), self._random(rng, b, c), self._random(rng, c, e)
            worst = max(worst, ((h @ g) @ f).distance(h @ (g @ f)), (d.identity(b) @ f).distance(f))
        return worst, f"{self.trials} random triples"

    def interchange(self, rng):
        d, worst = self.context.diagram, 0.0
        for a, b, c, e in self.samples:
            f, g = self._random(rng, a, b), self._random(rng, c, e)
            h, k = self._random(rng, b, a), self._random(rng, e, c)
            worst = max(worst, (d.tensor(h, k) @ d.tensor(f, g)).distance(d.tensor(h @ f, k @ g)))
        return worst, "(h⊗k)(f⊗g) = hf⊗kg"

    def zigzag(self):
        d, worst = self.context.diagram, 0.0
        for a in self.words:
            ad = d.dual_obj(a)
            snake = d.tensor(d.identity(a), d.ev(a)) @ d.tensor(d.coev(a), d.identity(a))
            other = d.tensor(d.ev(a), d.identity(ad)) @ d.tensor(d.identity(ad), d.coev(a))
            worst = max(worst, snake.distance(d.identity(a)), other.distance(d.identity(ad)))
        return worst, f"{len(self.words)} words"

    def braiding_naturality(self, rng):
        d, worst = self.context.diagram, 0.0
        for a, b, c, e in self.samples:
            f, g = self._random(rng, a, b), self._random(rng, c, e)
            lhs = d.braiding(b, e) @ d.tensor(f, g)
            rhs = d.tensor(g, f) @ d.braiding(a, c)
            worst = max(worst, lhs.distance(rhs))
        return worst, "β(f⊗g) = (g⊗f)β"

    def hexagon(self):
        d, worst = self.context.diagram, 0.0
        for a, b, c, _ in self.samples:
            lhs = d.braiding(a, b.tensor(c))
            rhs = d.tensor(d.identity(b), d.braiding(a, c)) @ d.tensor(d.braiding(a, b), d.identity(c))
            worst = max(worst, lhs.distance(rhs))
        return worst, "β_{A,B⊗C} = (id⊗β_{A,C})(β_{A,B}⊗id)"

    def ribbon(self):
        d, worst = self.context.diagram, 0.0
        for a, b, _, _ in self.samples:
            lhs = d.twist(a.tensor(b))
            rhs = d.braiding(b, a) @ d.braiding(a, b) @ d.tensor(d.twist(a), d.twist(b))
            worst = max(worst, lhs.distance(rhs))
        return worst, "θ_{A⊗B} = β_{B,A}β_{A,B}(θ_A⊗θ_B)"

    def trace_cyclicity(self, rng):
        d, worst = self.context.diagram, 0.0
        for a, b, _, _ in self.samples:
            f, g = self._random(rng, a, b), self._random(rng, b, a)
            worst = max(worst, abs(d.trace(g @ f) - d.trace(f @ g)))
        return worst, "tr(gf) = tr(fg)"

    def rotation(self, rng):
        d, worst = self.context.diagram, 0.0
        for a, b, _, _ in self.samples:
            phi = self._random(rng, Obj.unit(), a.tensor(b))
            cycle = d.rotate_coupon(d.rotate_coupon(phi, a, b), b, a)
            worst = max(worst, cycle.distance(phi))
        return worst, "two rotations of a coupon give the coupon back"

    def completeness(self):
        d, cat = self.context.diagram, self.context.cat
        worst = 0.0
        for length in (1, 2, 3):
            for w in itertools.product(range(cat.rank), repeat=length):
                worst = max(worst, d.completeness_residual(Obj.word(*w)))
        return worst, "words of length ≤ 3"

    async def run(self) -> List[CheckRecord]:
        checks = [
            ("composition", partial(self.composition, self._stream(1))),
            ("interchange", partial(self.interchange, self._stream(2))),
            ("zig-zag", self.zigzag),
            ("braiding naturality", partial(self.braiding_naturality, self._stream(3))),
            ("hexagon on objects", self.hexagon),
            ("ribbon twist", self.ribbon),
            ("trace cyclicity", partial(self.trace_cyclicity, self._stream(4))),
            ("coupon rotation", partial(self.rotation, self._stream(5))),
            ("completeness", self.completeness),
        ]
        return await gather_checks(self.name, checks, self.context.tol)
