# Frobenius and Cardy algebra package initialization
from src.algebra.cardy import (
    CardyAlgebra,
    CardyMorphism,
    NotIsomorphic,
    canonical_cardy,
    cardy_isomorphic,
    corrupt_cardy,
    verify_cardy,
)
from src.algebra.frobenius import (
    FrobeniusAlgebra,
    endomorphism_frobenius,
    frobenius_adjoint,
    transport_L,
    trivial_algebra,
    verify_frobenius,
)
