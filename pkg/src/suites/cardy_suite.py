"""Cardy Suite
Frobenius axioms of the transported and loaded algebras, then conditions I-IV
"""

import asyncio
import logging
from typing import Callable, List, Tuple

from src.algebra.cardy import canonical_cardy, verify_cardy, verify_components
from src.algebra.frobenius import endomorphism_frobenius, transport_L, trivial_algebra, verify_frobenius
from src.diagram.objects import Obj
from src.reporting.report import CheckRecord
from src.suites.suite_manager import RunContext


class CardySuite:
    """Checks the run's Cardy algebra; the canonical one when none was loaded"""

    def __init__(self, context: RunContext):
        self.context = context
        self.name = "cardy"
        self.logger = logging.getLogger("mtc_engine.suites.cardy")

    def _jobs(self) -> List[Tuple[str, Callable]]:
        ctx = self.context
        lf, tol = ctx.lf, ctx.tol
        cat = ctx.cat
        cardy = ctx.cardy if ctx.cardy is not None else canonical_cardy(lf)
        boundary = Obj.unit() + Obj.simple(cat.rank - 1)
        jobs = [
            ("transport", lambda: verify_frobenius(lf, transport_L(lf, trivial_algebra(lf.d)), tol)),
            ("transport", lambda: verify_frobenius(lf, transport_L(lf, endomorphism_frobenius(lf.d, boundary)), tol)),
        ]
        jobs += [("algebra file", lambda alg=alg: verify_frobenius(lf, alg, tol)) for alg in ctx.algebras]
        jobs += [
            (cardy.name, lambda: verify_components(lf, cardy, tol)),
            (cardy.name, lambda: verify_cardy(lf, cardy, tol)),
        ]
        return jobs

    async def run(self) -> List[CheckRecord]:
        jobs = self._jobs()
        results = await asyncio.gather(*(asyncio.to_thread(job) for _, job in jobs))
        records = []
        for (note, _), checks in zip(jobs, results):
            records.extend(CheckRecord.from_axiom(self.name, check, note) for check in checks)
        failed = [r.name for r in records if not r.passed]
        if failed:
            self.logger.info(f"Failing checks: {failed}")
        return records
