"""Suite Manager for MTC-Engine
Builds the shared engines for a run and loads verification suites dynamically
"""

import asyncio
import importlib
import logging
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

import numpy as np

from config.settings import SUITES, RunConfig
from src.algebra.cardy import CardyAlgebra
from src.algebra.frobenius import FrobeniusAlgebra
from src.center.center import DrinfeldCenter
from src.center.lfunctor import LFunctor
from src.diagram.engine import Diagram
from src.mtc_core.category import CategoryData
from src.reporting.report import CheckRecord
from src.sewing.correlators import CorrelatorSet

Check = Tuple[str, Callable[[], Tuple[float, str]]]


@dataclass
class RunContext:
    """Category, engines and loaded data shared by the suites of one run"""
    config: RunConfig
    cat: CategoryData
    diagram: Diagram
    center: DrinfeldCenter
    lf: LFunctor
    rng: np.random.Generator
    cardy: Optional[CardyAlgebra] = None
    correlators: Optional[CorrelatorSet] = None
    algebras: List[FrobeniusAlgebra] = field(default_factory=list)

    @classmethod
    def build(cls, config, cat):
        cat.tol = config.tolerance
        diagram = Diagram(cat)
        center = DrinfeldCenter(diagram)
        return cls(config, cat, diagram, center, LFunctor(center), np.random.default_rng(config.seed))

    @property
    def tol(self):
        return self.config.tolerance


async def gather_checks(suite, checks, tol, note=""):
    """Evaluate independent checks in worker threads; records keep the order of checks"""
    logger = logging.getLogger(f"mtc_engine.suites.{suite}")

    def evaluate(name, compute):
        try:
            residual, detail = compute()
        except (ArithmeticError, np.linalg.LinAlgError) as e:
            logger.error(f"{name} could not be evaluated: {e}")
            return CheckRecord(suite, name, float("inf"), False, note, f"not evaluable: {e}")
        return CheckRecord(suite, name, float(residual), bool(residual < tol), note, detail)

    return list(await asyncio.gather(*(asyncio.to_thread(evaluate, name, compute) for name, compute in checks)))


class SuiteManager:
    """Loads src.suites.<key>_suite.<Key>Suite and runs the selection in order"""

    def __init__(self, context):
        self.context = context
        self.suites = {}
        self.logger = logging.getLogger("mtc_engine.suite_manager")

    async def load_suite(self, key):
        """Dynamically load one suite"""
        if key not in SUITES or not SUITES[key].enabled:
            self.logger.error(f"Suite '{key}' is not registered or disabled")
            return False
        try:
            class_name = f"{key.capitalize()}Suite"
            module = importlib.import_module(f"src.suites.{key}_suite")
            self.suites[key] = getattr(module, class_name)(self.context)
            return True
        except (ImportError, AttributeError) as e:
            self.logger.error(f"Failed to load suite '{key}': {str(e)}")
            return False

    async def run(self, keys):
        records: List[CheckRecord] = []
        for key in keys:
            if key not in self.suites and not await self.load_suite(key):
                records.append(CheckRecord(key, "load", float("inf"), False, detail="suite could not be loaded"))
                continue
            print(f"🔄 Running {SUITES[key].name} suite")
            suite_records = await self.suites[key].run()
            failed = sum(1 for r in suite_records if not r.passed)
            self.logger.info(f"{key}: {len(suite_records) - failed}/{len(suite_records)} checks passed")
            records.extend(suite_records)
        return records
