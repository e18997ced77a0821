"""Category Suite
Axioms of the loaded category data plus the killing ring for every label
"""

import logging
from typing import List

from src.mtc_core.axioms import check_category
from src.mtc_core.category import verify_killing_ring
from src.reporting.report import CheckRecord
from src.suites.suite_manager import RunContext, gather_checks


class CategorySuite:
    """Fusion ring, pentagon, hexagons, rigidity, sphericality, modularity"""

    def __init__(self, context: RunContext):
        self.context = context
        self.name = "category"
        self.logger = logging.getLogger("mtc_engine.suites.category")

    def _killing_ring(self, label: int):
        cat = self.context.cat
        expected = cat.global_dim_sq if label == 0 else 0.0
        value = verify_killing_ring(cat, label)
        return abs(value - expected), f"value {value.real:.6g}{value.imag:+.3g}i, expected {complex(expected).real:.6g}"

    async def run(self) -> List[CheckRecord]:
        cat = self.context.cat
        records = [CheckRecord.from_axiom(self.name, c) for c in check_category(cat, self.context.tol)]
        checks = [
            (f"killing ring {cat.labels[l]}", lambda l=l: self._killing_ring(l)) for l in range(cat.rank)
        ]
        records.extend(await gather_checks(self.name, checks, self.context.tol))
        return records
