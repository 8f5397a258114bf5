from bethe.ensemble.factors import (
    TABLE_CAP,
    binary_csp_factor,
    build_factor_table,
    equality_factor,
    load_factor,
    not_equal_factor,
    ones_factor,
    parity_check_factor,
    save_factor,
)
from bethe.ensemble.operations import (
    design_rate,
    has_constant_branch_sums,
    replicate_factor,
    require_constant_branch_sums,
)

__all__ = [
    "TABLE_CAP",
    "binary_csp_factor",
    "build_factor_table",
    "design_rate",
    "equality_factor",
    "has_constant_branch_sums",
    "load_factor",
    "not_equal_factor",
    "ones_factor",
    "parity_check_factor",
    "replicate_factor",
    "require_constant_branch_sums",
    "save_factor",
]
