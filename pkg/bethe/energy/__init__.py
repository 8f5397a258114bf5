from bethe.energy.annealed import (
    annealed_field,
    annealed_irregular,
    annealed_poisson,
    annealed_random_field,
    annealed_regular,
    moment_exponent,
)
from bethe.energy.constraints import maximize_with_linear_constraints
from bethe.energy.growth import fixed_type_growth, growth_rate_curve, simplex_grid
from bethe.energy.ldpc import ldpc_growth_curve, ldpc_growth_rate_closed_form, ldpc_params
from bethe.energy.objectives import (
    annealed_regular_at,
    bethe_type_objective,
    growth_rate_fixed_type,
    poisson_type_objective,
    reconstruct_type,
)

__all__ = [
    "annealed_field",
    "annealed_irregular",
    "annealed_poisson",
    "annealed_random_field",
    "annealed_regular",
    "annealed_regular_at",
    "bethe_type_objective",
    "fixed_type_growth",
    "growth_rate_curve",
    "growth_rate_fixed_type",
    "ldpc_growth_curve",
    "ldpc_growth_rate_closed_form",
    "ldpc_params",
    "maximize_with_linear_constraints",
    "moment_exponent",
    "poisson_type_objective",
    "reconstruct_type",
    "simplex_grid",
]
