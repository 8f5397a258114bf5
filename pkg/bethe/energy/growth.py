"""Growth rate at fixed variable type, and sweeps of it over a grid of types."""

import logging
from collections.abc import Callable
from functools import partial

import numpy as np

from bethe.bp.solvers import solve_fixed_type
from bethe.core.errors import DegenerateMessageError
from bethe.core.models import (
    GrowthPoint,
    NewtonOptions,
    RegularSpec,
    SolveOptions,
    Solver,
)
from bethe.energy.objectives import growth_rate_fixed_type
from bethe.lib import combinatorics, pool
from bethe.newton.solver import maximize_mu_given_nu

logger = logging.getLogger(__name__)


def simplex_grid(q: int, points: int) -> np.ndarray:
    """Type grid on the q-simplex.

    For q = 2 the grid is `points` evenly spaced nu(1) values. For larger q it is the
    lattice of compositions with the finest resolution keeping at most `points` entries.
    """
    if q == 2:
        nu1 = np.linspace(0.0, 1.0, max(2, points))
        return np.column_stack([1.0 - nu1, nu1])
    resolution = 1
    while combinatorics.count_compositions(resolution + 1, q) <= points:
        resolution += 1
    return combinatorics.compositions(resolution, q) / resolution


def fixed_type_growth(
    spec: RegularSpec,
    nu: np.ndarray,
    opts: SolveOptions | None = None,
    newton_opts: NewtonOptions | None = None,
) -> GrowthPoint:
    """BP at fixed type, recomputed by the Newton dual when BP does not converge."""
    opts = opts or SolveOptions()
    nu = np.asarray(nu, dtype=np.float64)
    bp_iterations = 0
    try:
        mp, report = solve_fixed_type(spec, nu, opts)
        bp_iterations = report.iterations
        if report.converged:
            value = growth_rate_fixed_type(spec, nu, mp)
            if not np.isnan(value):
                return GrowthPoint(nu, value, True, report.iterations, Solver.BP)
    except DegenerateMessageError as e:
        logger.debug(f"BP degenerate at nu={nu}: {e}")

    result = maximize_mu_given_nu(spec, nu, newton_opts)
    value = growth_rate_fixed_type(spec, nu, result)
    logger.debug(f"Newton fallback at nu={nu}: {value:.12g}")
    return GrowthPoint(nu, value, False, bp_iterations, Solver.NEWTON)


def _grid_point(
    spec: RegularSpec, opts: SolveOptions, newton_opts: NewtonOptions, nu: np.ndarray
) -> GrowthPoint:
    return fixed_type_growth(spec, nu, opts, newton_opts)


def growth_rate_curve(
    spec: RegularSpec,
    grid: int = 201,
    opts: SolveOptions | None = None,
    newton_opts: NewtonOptions | None = None,
    workers: int | None = 1,
    progress: Callable[[int, int], None] | None = None,
) -> list[GrowthPoint]:
    """Growth rate at every grid type, in grid order."""
    opts = opts or SolveOptions()
    newton_opts = newton_opts or NewtonOptions()
    types = simplex_grid(spec.q, grid)
    fn = partial(_grid_point, spec, opts, newton_opts)
    return pool.map_ordered(fn, list(types), workers=workers, progress=progress)


def best_point(points: list[GrowthPoint], offset: Callable[[np.ndarray], float] | None = None):
    """Largest finite value (plus an optional linear tilt in nu); None if every point is -inf."""
    best, best_value = None, float("-inf")
    for point in points:
        value = point.value + (offset(point.nu) if offset else 0.0)
        if np.isfinite(value) and value > best_value:
            best, best_value = point, value
    return best, best_value
