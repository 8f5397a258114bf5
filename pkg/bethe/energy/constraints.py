"""Growth rate maximized over types subject to extra linear constraints on nu and mu.

The inner problem over mu is the fixed-type dual with extra feature columns, one per
mu-constraint; the outer problem over nu runs on the affine slice of the simplex cut out
by the nu-constraints, first on the type grid and then refined with SLSQP.
"""

import logging

import numpy as np
from scipy.linalg import lstsq, null_space
from scipy.optimize import minimize

from bethe.core.errors import InfeasibleError, SpecError
from bethe.core.models import (
    ConstrainedResult,
    ConstraintSet,
    NewtonOptions,
    NewtonReport,
    RegularSpec,
)
from bethe.energy.growth import simplex_grid
from bethe.lib.combinatorics import all_tuples, symbol_counts
from bethe.lib.logspace import entropy
from bethe.newton.dual import reduce_face
from bethe.newton.solver import maximize_mu_given_nu, minimize_dual

logger = logging.getLogger(__name__)

SLICE_TOL = 1e-9
PENALTY = 1e6


def _nu_system(q: int, constraints: ConstraintSet) -> tuple[np.ndarray, np.ndarray]:
    rows = [np.asarray(a, dtype=np.float64).reshape(q) for a in constraints.nu_rows]
    rows.append(np.ones(q))
    rhs = [*constraints.nu_rhs, 1.0]
    if len(rows) != len(rhs):
        raise SpecError("every nu-constraint row needs a right-hand side")
    return np.vstack(rows), np.asarray(rhs, dtype=np.float64)


def _inner(
    spec: RegularSpec, nu: np.ndarray, constraints: ConstraintSet, newton_opts: NewtonOptions
) -> tuple[float, NewtonReport]:
    """max over mu of (l/r)(H(mu) + sum mu log f) - (l-1) H(nu) under all constraints."""
    l, r = spec.l, spec.r
    if not constraints.mu_rows:
        result = maximize_mu_given_nu(spec, nu, newton_opts)
        if not result.feasible:
            return float("-inf"), result.report
        return l / r * result.entropy_energy - (l - 1) * entropy(nu), result.report

    f = spec.factor
    q = f.q
    flat = f.values.reshape(-1)
    support = np.flatnonzero(nu > 0)
    counts = symbol_counts(all_tuples(q, r), q)
    inside = (flat > 0) & (counts[:, np.setdiff1d(np.arange(q), support)].sum(axis=1) == 0)
    empty = NewtonReport(True, 0, 0.0)
    if not np.any(inside):
        return float("-inf"), empty

    extra = np.column_stack(
        [np.asarray(c, dtype=np.float64).reshape(-1)[inside] for c in constraints.mu_rows]
    )
    features = np.hstack([counts[inside][:, support[:-1]].astype(np.float64), extra])
    target = np.concatenate([r * nu[support[:-1]], np.asarray(constraints.mu_rhs, dtype=float)])
    try:
        keep = reduce_face(features, target)
    except InfeasibleError:
        return float("-inf"), empty
    log_weight = np.log(flat[inside][keep])
    _, value, _, report = minimize_dual(log_weight, features[keep], target, newton_opts)
    return l / r * value - (l - 1) * entropy(nu), report


def maximize_with_linear_constraints(
    spec: RegularSpec,
    constraints: ConstraintSet | None = None,
    newton_opts: NewtonOptions | None = None,
    grid: int = 201,
) -> ConstrainedResult:
    """sup over (nu, mu) of the Bethe type objective under sum a nu = b and sum c mu = d."""
    constraints = constraints or ConstraintSet()
    newton_opts = newton_opts or NewtonOptions()
    if len(constraints.mu_rows) != len(constraints.mu_rhs):
        raise SpecError("every mu-constraint row needs a right-hand side")
    q = spec.q
    a, b = _nu_system(q, constraints)

    def phi(nu: np.ndarray) -> tuple[float, NewtonReport]:
        return _inner(spec, nu, constraints, newton_opts)

    def loss(nu: np.ndarray) -> float:
        nu = np.clip(nu, 0.0, None)
        if not nu.sum() > 0:
            return PENALTY
        value = phi(nu / nu.sum())[0]
        return -value if np.isfinite(value) else PENALTY

    directions = null_space(a)
    if directions.shape[1] == 0:
        nu, *_ = lstsq(a, b)
        if np.max(np.abs(a @ nu - b)) > SLICE_TOL or np.min(nu) < -SLICE_TOL:
            raise InfeasibleError(f"nu-constraints admit no distribution (closest {nu})")
        nu = np.clip(nu, 0.0, None)
        nu /= nu.sum()
        value, report = phi(nu)
        if not np.isfinite(value):
            raise InfeasibleError(f"no factor-type realizes the constrained nu={nu}")
        return ConstrainedResult(value, nu, report)

    candidates = [nu for nu in simplex_grid(q, grid) if np.max(np.abs(a @ nu - b)) <= SLICE_TOL]
    best_nu, best_value, best_report = None, float("-inf"), None
    for nu in candidates:
        value, report = phi(nu)
        if value > best_value:
            best_nu, best_value, best_report = nu, value, report

    start = best_nu
    if start is None:
        start, *_ = lstsq(a, b)
        start = np.clip(start, 1e-6, None)
    refined = minimize(
        loss,
        start,
        method="SLSQP",
        bounds=[(0.0, 1.0)] * q,
        constraints=[{"type": "eq", "fun": lambda nu: a @ nu - b}],
        options={"ftol": 1e-14, "maxiter": 200},
    )
    if refined.success and np.max(np.abs(a @ refined.x - b)) <= SLICE_TOL:
        nu = np.clip(refined.x, 0.0, None)
        nu /= nu.sum()
        value, report = phi(nu)
        if value > best_value:
            logger.debug(f"SLSQP refined {best_value:.12g} -> {value:.12g}")
            best_nu, best_value, best_report = nu, value, report

    if best_nu is None or not np.isfinite(best_value):
        raise InfeasibleError("constraint set admits no feasible (nu, mu)")
    return ConstrainedResult(best_value, best_nu, best_report)
