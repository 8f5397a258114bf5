"""Annealed free energies: the best stationary value over BP restarts and type grids."""

import logging
from collections.abc import Callable

import numpy as np

from bethe.bp import solvers
from bethe.core.errors import NumericalError
from bethe.core.models import (
    AnnealedResult,
    FieldSpec,
    IrregularSpec,
    NewtonOptions,
    PoissonSpec,
    Provenance,
    RandomFieldSpec,
    RegularSpec,
    SolveOptions,
    SolveReport,
)
from bethe.energy.growth import best_point, growth_rate_curve, simplex_grid
from bethe.energy.objectives import poisson_type_objective
from bethe.ensemble.factors import TABLE_CAP
from bethe.ensemble.operations import design_rate, has_constant_branch_sums, replicate_factor
from bethe.lib.logspace import safe_log

logger = logging.getLogger(__name__)

# BP keeps the win on ties within this margin
TIE_TOL = 1e-12

Progress = Callable[[int, int], None]


def _design_rate_or_none(spec: RegularSpec | IrregularSpec) -> float | None:
    if isinstance(spec, RegularSpec):
        constant = has_constant_branch_sums(spec.factor)
    else:
        constant = all(has_constant_branch_sums(f) for f in spec.factors.values())
    return design_rate(spec) if constant else None


def _no_stationary_point(label: str, report: SolveReport) -> NumericalError:
    detail = f": {report.error}" if report.error else ""
    return NumericalError(f"{label}: no stationary point found{detail}")


def _field_tilt(h: FieldSpec) -> Callable[[np.ndarray], float]:
    log_h = safe_log(h.h)

    def tilt(nu: np.ndarray) -> float:
        charged = nu > 0
        return float(np.dot(nu[charged], log_h[charged]))

    return tilt


def _combine(
    label: str,
    bp_value: float | None,
    report: SolveReport,
    messages,
    grid_points: list | None,
    tilt: Callable[[np.ndarray], float] | None = None,
) -> AnnealedResult:
    grid_best, grid_value = best_point(grid_points, tilt) if grid_points else (None, -np.inf)
    bp_ok = bp_value is not None and np.isfinite(bp_value)
    extra = {}
    if grid_points:
        extra["grid_points"] = len(grid_points)
        extra["grid_bp_converged"] = sum(p.converged for p in grid_points)
    if bp_ok and (grid_best is None or bp_value >= grid_value - TIE_TOL):
        return AnnealedResult(bp_value, report, Provenance.BP, messages, extra=extra)
    if grid_best is None:
        raise _no_stationary_point(label, report)
    boundary = bool(np.any(grid_best.nu == 0))
    if bp_ok:
        logger.info(f"{label}: grid value {grid_value:.12g} beats BP value {bp_value:.12g}")
    if boundary:
        logger.info(f"{label}: maximizer on the simplex boundary at nu={grid_best.nu}")
    provenance = Provenance.GRID if grid_best.converged else Provenance.NEWTON
    return AnnealedResult(
        grid_value, report, provenance, messages, nu=grid_best.nu, boundary=boundary, extra=extra
    )


def annealed_regular(
    spec: RegularSpec,
    opts: SolveOptions | None = None,
    newton_opts: NewtonOptions | None = None,
    grid: int = 201,
    workers: int | None = 1,
    progress: Progress | None = None,
) -> AnnealedResult:
    """max over stationary points of (l/r) log Z_f + log Z_v - l log Z_fv.

    Candidates are the converged BP restarts and the sup of the fixed-type growth rate over
    a type grid (grid=0 skips the grid).
    """
    opts = opts or SolveOptions()
    mp, report = solvers.solve_regular(spec, opts)
    bp_value = report.objective if report.converged else None
    points = growth_rate_curve(spec, grid, opts, newton_opts, workers, progress) if grid else None
    result = _combine("regular", bp_value, report, mp, points)
    result.design_rate = _design_rate_or_none(spec)
    return result


def annealed_field(
    spec: RegularSpec,
    h: FieldSpec,
    opts: SolveOptions | None = None,
    newton_opts: NewtonOptions | None = None,
    grid: int = 201,
    workers: int | None = 1,
    progress: Progress | None = None,
) -> AnnealedResult:
    """Annealed value with a field h on every variable; the grid term adds sum nu log h."""
    opts = opts or SolveOptions()
    mp, report = solvers.solve_field(spec, h, opts)
    bp_value = report.objective if report.converged else None
    points = growth_rate_curve(spec, grid, opts, newton_opts, workers, progress) if grid else None
    return _combine("field", bp_value, report, mp, points, _field_tilt(h))


def annealed_random_field(
    spec: RegularSpec, rf: RandomFieldSpec, opts: SolveOptions | None = None
) -> AnnealedResult:
    """(l/r) log Z_f + sum_h P_H(h) log Z_v(h) - l log Z_fv at the random-field saddle."""
    mp, report = solvers.solve_random_field(spec, rf, opts)
    if not np.isfinite(report.objective):
        raise _no_stationary_point("random-field", report)
    if not report.converged:
        logger.warning(f"random-field BP did not converge (residual {report.residual:.3e})")
    return AnnealedResult(report.objective, report, Provenance.BP, mp)


def annealed_irregular(spec: IrregularSpec, opts: SolveOptions | None = None) -> AnnealedResult:
    """(L'(1)/R'(1)) sum_j R_j log Z_f(j) + sum_i L_i log Z_v(i) - L'(1) log Z_fv."""
    state, report = solvers.solve_irregular(spec, opts)
    if not np.isfinite(report.objective):
        raise _no_stationary_point("irregular", report)
    if not report.converged:
        logger.warning(f"irregular BP did not converge (residual {report.residual:.3e})")
    result = AnnealedResult(report.objective, report, Provenance.BP, state.messages)
    result.design_rate = _design_rate_or_none(spec)
    result.extra = {"l_weights": state.l_w, "r_weights": state.r_w}
    return result


def annealed_poisson(
    spec: PoissonSpec, opts: SolveOptions | None = None, grid: int = 201
) -> AnnealedResult:
    """alpha log Z_f + log Z_v - e sum m_vf m_fv, checked against H(nu) + alpha log sum f nu^k."""
    opts = opts or SolveOptions()
    try:
        state, report = solvers.solve_poisson(spec, opts)
    except NumericalError as e:
        if not grid:
            raise
        logger.warning(f"Poisson BP aborted: {e}")
        state, report = None, SolveReport(False, 0, float("inf"), error=str(e))
    bp_value = report.objective if report.converged else None
    best_nu, best_value = None, float("-inf")
    if grid:
        for nu in simplex_grid(spec.q, grid):
            value = poisson_type_objective(spec, nu)
            if np.isfinite(value) and value > best_value:
                best_nu, best_value = nu, value

    messages = state.messages if state else None
    extra = {"e": state.e, "coupling": state.coupling} if state else {}
    if bp_value is not None and np.isfinite(bp_value) and bp_value >= best_value - TIE_TOL:
        return AnnealedResult(bp_value, report, Provenance.BP, messages, extra=extra)
    if best_nu is None:
        raise _no_stationary_point("poisson", report)
    boundary = bool(np.any(best_nu == 0))
    return AnnealedResult(
        best_value, report, Provenance.GRID, messages, nu=best_nu, boundary=boundary, extra=extra
    )


def moment_exponent(
    spec: RegularSpec,
    n: int,
    opts: SolveOptions | None = None,
    newton_opts: NewtonOptions | None = None,
    grid: int = 201,
    cap: int = TABLE_CAP,
    workers: int | None = 1,
) -> AnnealedResult:
    """lim (1/N) log E[Z^n], the annealed value of the n-replica ensemble."""
    replicated = RegularSpec(spec.l, spec.r, replicate_factor(spec.factor, n, cap))
    logger.debug(f"moment n={n}: alphabet size {replicated.q}")
    return annealed_regular(replicated, opts, newton_opts, grid, workers)
