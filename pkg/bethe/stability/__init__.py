from bethe.stability.operations import (
    binary_csp_stability_fraction,
    binary_csp_stability_value,
    linearized_operator,
    paramagnetic_stability,
)

__all__ = [
    "binary_csp_stability_fraction",
    "binary_csp_stability_value",
    "linearized_operator",
    "paramagnetic_stability",
]
