"""Sewing Suite
Relations R1-R32 on the run's correlator set, one worker per relation
"""

import asyncio
import logging
from typing import List

from src.algebra.cardy import canonical_cardy
from src.reporting.report import CheckRecord
from src.sewing.correlators import canonical_correlators
from src.sewing.relations import RELATION_COUNT, RelationContext, check_relation
from src.suites.suite_manager import RunContext


class SewingSuite:
    """Checks the loaded correlators, or the canonical ones of the run's Cardy algebra"""

    def __init__(self, context: RunContext):
        self.context = context
        self.name = "sewing"
        self.logger = logging.getLogger("mtc_engine.suites.sewing")

    def correlators(self):
        ctx = self.context
        if ctx.correlators is not None:
            return ctx.correlators
        return canonical_correlators(ctx.lf, ctx.cardy if ctx.cardy is not None else canonical_cardy(ctx.lf))

    async def run(self) -> List[CheckRecord]:
        ctx = self.context
        corr = self.correlators()
        shared = await asyncio.to_thread(RelationContext(ctx.lf, corr).prepare)
        results = await asyncio.gather(*(
            asyncio.to_thread(check_relation, ctx.lf, k, corr, ctx.tol, shared)
            for k in range(1, RELATION_COUNT + 1)
        ))
        passed = sum(1 for r in results if r.passed)
        self.logger.info(f"{corr.name}: {passed}/{RELATION_COUNT} relations hold")
        return [CheckRecord.from_relation(self.name, r) for r in results]
