"""
MTC-Engine Configuration Settings
Central configuration for tolerances, fixtures, verification suites and logging
"""

import math
import os
from dataclasses import dataclass, field
from typing import Dict, List, Optional

# Paths
PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
CONFIG_DIR = os.path.join(PROJECT_ROOT, "config")
CATEGORY_DIR = os.path.join(CONFIG_DIR, "categories")
ALGEBRA_DIR = os.path.join(CONFIG_DIR, "algebras")
CORRELATOR_DIR = os.path.join(CONFIG_DIR, "correlators")

# Numerics
DEFAULT_TOLERANCE = 1e-9
DEFAULT_SEED = 20240617
RANDOM_TRIALS = 100
NEGATIVE_CONTROL_THRESHOLD = 1e-3
CORRUPTION_SCALE = 0.1

# File formats
CATEGORY_SCHEMA = "mtc-data/1"
ALGEBRA_SCHEMA = "mtc-algebra/1"
CARDY_SCHEMA = "mtc-cardy/1"
CORRELATOR_SCHEMA = "mtc-correlators/1"
REPORT_SCHEMA_VERSION = "1.0"

OUTPUT_FORMATS = ("text", "json")

# Exit codes
EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT_ERROR = 2


def rank_cutoff(tol: float) -> float:
    """Singular-value threshold used for every rank decision"""
    return math.sqrt(tol)


@dataclass
class SuiteConfig:
    """Configuration for each verification suite"""
    name: str
    description: str
    commands: List[str]
    enabled: bool = True
    default: bool = True


# Suite registry: key -> src.suites.<key>_suite.<Key>Suite
SUITES: Dict[str, SuiteConfig] = {
    "category": SuiteConfig(
        name="Category axioms",
        description="Fusion ring, pentagon, hexagons, rigidity, sphericality, modularity, killing ring",
        commands=["check-category"],
    ),
    "diagram": SuiteConfig(
        name="Graphical calculus",
        description="Category laws, interchange, zig-zags, naturality, completeness on random morphisms",
        commands=["check-category"],
        default=False,
    ),
    "center": SuiteConfig(
        name="Drinfeld center",
        description="Half-braidings, L-functor coherence, projector, Y after Z",
        commands=["check-category", "check-cardy"],
        default=False,
    ),
    "cardy": SuiteConfig(
        name="Cardy algebra",
        description="Frobenius axioms of both sectors and Cardy conditions I-IV",
        commands=["check-cardy"],
    ),
    "sewing": SuiteConfig(
        name="Sewing constraints",
        description="Relations R1-R32 on a correlator set",
        commands=["check-sewing"],
    ),
}


@dataclass
class RunConfig:
    """Configuration of a single CLI run"""
    command: str
    category: Optional[str] = None
    algebra: List[str] = field(default_factory=list)
    correlators: Optional[str] = None
    canonical: bool = False
    tolerance: float = DEFAULT_TOLERANCE
    seed: int = DEFAULT_SEED
    suites: List[str] = field(default_factory=list)
    output_format: str = "text"
    output: Optional[str] = None
    trials: int = RANDOM_TRIALS

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")
        unknown = [s for s in self.suites if s not in SUITES]
        if unknown:
            raise ValueError(f"unknown suite(s): {', '.join(unknown)}; choose from {', '.join(SUITES)}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(f"unknown output format '{self.output_format}'")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")

    def selected_suites(self) -> List[str]:
        """Explicit selection, or every enabled default suite registered for the command"""
        if self.suites:
            return list(self.suites)
        return [
            key for key, suite in SUITES.items()
            if suite.enabled and suite.default and self.command in suite.commands
        ]


# Logging Configuration
LOG_LEVEL = "INFO"
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LOG_DIR = "logs"
LOG_FILE = os.path.join(LOG_DIR, "mtc_engine.log")
