from bethe.replica.operations import (
    FixedPointSurvey,
    check_annealed_rs_equality,
    rs_fixed_points,
    rs_free_energy,
)
from bethe.replica.population import Contractor, de_step

__all__ = [
    "Contractor",
    "FixedPointSurvey",
    "check_annealed_rs_equality",
    "de_step",
    "rs_fixed_points",
    "rs_free_energy",
]
