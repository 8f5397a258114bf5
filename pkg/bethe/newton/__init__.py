from bethe.newton.dual import dual_objective, reduce_face
from bethe.newton.solver import maximize_mu_given_nu, minimize_dual, mu_marginal

__all__ = [
    "dual_objective",
    "maximize_mu_given_nu",
    "minimize_dual",
    "mu_marginal",
    "reduce_face",
]
