from bethe.bp.solvers import (
    solve_field,
    solve_fixed_type,
    solve_irregular,
    solve_poisson,
    solve_random_field,
    solve_regular,
)
from bethe.bp.terms import (
    fixed_type_value,
    irregular_value,
    log_z_f,
    log_z_fv,
    log_z_v,
    poisson_value,
    random_field_value,
    regular_value,
)
from bethe.bp.updates import (
    log_branch_sums,
    update_f_to_v,
    update_f_to_v_irregular,
    update_v_to_f_field,
    update_v_to_f_fixed_type,
    update_v_to_f_irregular,
    update_v_to_f_poisson,
    update_v_to_f_random_field,
    update_v_to_f_regular,
)

__all__ = [
    "fixed_type_value",
    "irregular_value",
    "log_branch_sums",
    "log_z_f",
    "log_z_fv",
    "log_z_v",
    "poisson_value",
    "random_field_value",
    "regular_value",
    "solve_field",
    "solve_fixed_type",
    "solve_irregular",
    "solve_poisson",
    "solve_random_field",
    "solve_regular",
    "update_f_to_v",
    "update_f_to_v_irregular",
    "update_v_to_f_field",
    "update_v_to_f_fixed_type",
    "update_v_to_f_irregular",
    "update_v_to_f_poisson",
    "update_v_to_f_random_field",
    "update_v_to_f_regular",
]
