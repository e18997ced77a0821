"""Shared fixtures: shipped categories with their engines, and a seeded generator"""

import os
import sys
from dataclasses import dataclass

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from config.settings import ALGEBRA_DIR, CATEGORY_DIR, CORRELATOR_DIR, DEFAULT_SEED  # noqa: E402
from src.center.center import DrinfeldCenter  # noqa: E402
from src.center.lfunctor import LFunctor  # noqa: E402
from src.diagram.engine import Diagram  # noqa: E402
from src.mtc_core.category import CategoryData, load_category  # noqa: E402

MODULAR = ("vect", "fibonacci", "ising")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running property checks")


def category_path(name: str) -> str:
    return os.path.join(CATEGORY_DIR, f"{name}.json")


def algebra_path(name: str) -> str:
    return os.path.join(ALGEBRA_DIR, f"{name}.json")


def correlator_path(name: str) -> str:
    return os.path.join(CORRELATOR_DIR, f"{name}.json")


@dataclass
class Engines:
    cat: CategoryData
    d: Diagram
    center: DrinfeldCenter
    lf: LFunctor


@pytest.fixture(scope="session")
def engines():
    """engines(name) -> Engines, built once per category"""
    cache = {}

    def get(name: str) -> Engines:
        if name not in cache:
            cat = load_category(category_path(name))
            d = Diagram(cat)
            center = DrinfeldCenter(d)
            cache[name] = Engines(cat, d, center, LFunctor(center))
        return cache[name]

    return get


@pytest.fixture
def np_random() -> np.random.Generator:
    return np.random.default_rng(DEFAULT_SEED)
