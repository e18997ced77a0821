# Category data package initialization
from src.mtc_core.category import (
    CategoryData,
    FMove,
    load_category,
    parse_category,
    read_category,
    smatrix,
    verify_killing_ring,
)
from src.mtc_core.axioms import AxiomCheck, check_category
