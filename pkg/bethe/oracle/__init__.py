from bethe.oracle.counting import (
    ENUM_BUDGET,
    FiniteExponent,
    exact_annealed_curve,
    exact_annealed_finite,
    expected_type_count,
)
from bethe.oracle.matching import exhaustive_E_Z, multiset_permutations

__all__ = [
    "ENUM_BUDGET",
    "FiniteExponent",
    "exact_annealed_curve",
    "exact_annealed_finite",
    "exhaustive_E_Z",
    "expected_type_count",
    "multiset_permutations",
]
