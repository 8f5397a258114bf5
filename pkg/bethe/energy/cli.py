"""growth-rate, annealed, moments and ldpc commands."""

from typing import Annotated

import numpy as np
import typer

from bethe.cli import options, output, resolve
from bethe.cli.errors import error_feedback
from bethe.cli.spinner import spinner_for
from bethe.core.errors import ConfigError
from bethe.core.models import (
    AnnealedResult,
    FieldSpec,
    IrregularSpec,
    PoissonSpec,
    Provenance,
    RandomFieldSpec,
    RegularSpec,
)
from bethe.energy import annealed as annealed_ops
from bethe.energy.growth import best_point, growth_rate_curve
from bethe.energy.ldpc import ldpc_growth_curve
from bethe.ensemble.factors import TABLE_CAP
from bethe.lib.format import format_value, format_vector, to_units


def _progress(ctx: typer.Context, label: str):
    spinner = spinner_for(ctx, label)
    return spinner, (spinner.progress if spinner else None)


@error_feedback
def growth_rate(
    ctx: typer.Context,
    regular: options.Regular = None,
    factor: options.Factor = None,
    q: options.Q = None,
    grid: options.Grid = None,
    tol: options.Tol = None,
    max_iters: options.MaxIters = None,
    damping: options.Damping = None,
    restarts: options.Restarts = None,
    out: options.Output = None,
):
    """Growth rate at fixed variable type over a type grid, as CSV.

    BP points that do not converge are recomputed by the Newton dual and flagged.

    Example:
      bethe growth-rate --regular 10 20 --factor binary-csp:1 --grid 201
    """
    values = resolve.settings(
        ctx,
        regular=regular,
        factor=factor,
        q=q,
        grid=grid,
        tol=tol,
        max_iters=max_iters,
        damping=damping,
        restarts=restarts,
        output=out,
    )
    spec = resolve.require_regular(resolve.resolve_ensemble(values), "growth-rate")
    cfg = resolve.run_config("growth-rate", values, spec)
    spinner, progress = _progress(ctx, "growth rate")
    points = growth_rate_curve(
        spec, cfg.grid, cfg.solve, cfg.newton, workers=cfg.threads, progress=progress
    )
    if spinner:
        spinner.finish(f"{len(points)} grid points")

    type_columns = ["nu1"] if spec.q == 2 else [f"nu{x}" for x in range(spec.q)]
    header = [*type_columns, "value", "converged", "iterations", "solver"]
    rows = []
    for p in points:
        nu = [p.nu[1]] if spec.q == 2 else list(p.nu)
        rows.append([*nu, to_units(p.value, cfg.units), p.converged, p.iterations, p.solver])

    best, best_value = best_point(points)
    payload = {
        "value": to_units(best_value, cfg.units),
        "units": cfg.units.value,
        "converged": all(p.converged for p in points),
        "provenance": Provenance.GRID.value,
        "nu": None if best is None else best.nu,
        "config": cfg.as_dict(),
        "rows": [dict(zip(header, row, strict=True)) for row in rows],
    }
    if output.echo_json(payload, ctx):
        return
    output.emit_csv(ctx, header, rows, cfg.as_dict(), cfg.output)


def _annealed_payload(result: AnnealedResult, units) -> dict:
    payload = {
        "value": to_units(result.value, units),
        "units": units.value,
        "converged": result.converged,
        "provenance": result.provenance.value,
        "design_rate": None
        if result.design_rate is None
        else to_units(result.design_rate, units),
        "boundary": result.boundary,
        "iterations": result.report.iterations,
        "residual": result.report.residual,
        "restart": result.report.restart,
        "extra": result.extra,
    }
    if result.nu is not None:
        payload["nu"] = result.nu
    if result.messages is not None:
        payload["messages"] = {"m_vf": result.messages.m_vf, "m_fv": result.messages.m_fv}
    return payload


@error_feedback
def annealed(
    ctx: typer.Context,
    regular: options.Regular = None,
    poisson: options.Poisson = None,
    var_degrees: options.VarDegrees = None,
    check_degrees: options.CheckDegrees = None,
    factor: options.Factor = None,
    q: options.Q = None,
    field: options.Field = None,
    grid: options.Grid = None,
    tol: options.Tol = None,
    max_iters: options.MaxIters = None,
    damping: options.Damping = None,
    restarts: options.Restarts = None,
):
    """Annealed free energy of the ensemble, with optional (random) fields.

    Example:
      bethe annealed --regular 3 6 --factor parity
      bethe annealed --poisson 1.0 2 --factor not-equal
    """
    values = resolve.settings(
        ctx,
        regular=regular,
        poisson=poisson,
        var_degrees=var_degrees,
        check_degrees=check_degrees,
        factor=factor,
        q=q,
        field=field,
        grid=grid,
        tol=tol,
        max_iters=max_iters,
        damping=damping,
        restarts=restarts,
    )
    spec = resolve.resolve_ensemble(values)
    cfg = resolve.run_config("annealed", values, spec)
    fields = resolve.resolve_fields(values, spec.q)
    if fields is not None and not isinstance(spec, RegularSpec):
        raise ConfigError("fields are supported on regular ensembles only")

    spinner, progress = _progress(ctx, "annealed")
    if isinstance(spec, PoissonSpec):
        result = annealed_ops.annealed_poisson(spec, cfg.solve, cfg.grid)
    elif isinstance(spec, IrregularSpec):
        result = annealed_ops.annealed_irregular(spec, cfg.solve)
    elif isinstance(fields, FieldSpec):
        result = annealed_ops.annealed_field(
            spec, fields, cfg.solve, cfg.newton, cfg.grid, cfg.threads, progress
        )
    elif isinstance(fields, RandomFieldSpec):
        result = annealed_ops.annealed_random_field(spec, fields, cfg.solve)
    else:
        result = annealed_ops.annealed_regular(
            spec, cfg.solve, cfg.newton, cfg.grid, cfg.threads, progress
        )
    if spinner:
        spinner.finish("annealed value")

    payload = _annealed_payload(result, cfg.units)
    payload["config"] = cfg.as_dict()
    lines = [f"annealed  {format_value(result.value, cfg.units)}  [{result.provenance.value}]"]
    if result.design_rate is not None:
        lines.append(f"design    {format_value(result.design_rate, cfg.units)}")
    if result.nu is not None:
        flag = "  (boundary)" if result.boundary else ""
        lines.append(f"nu        {format_vector(result.nu)}{flag}")
    if result.messages is not None:
        lines.append(f"m_vf      {format_vector(result.messages.m_vf)}")
        lines.append(f"m_fv      {format_vector(result.messages.m_fv)}")
    output.respond(ctx, payload, "\n".join(lines))


@error_feedback
def moments(
    ctx: typer.Context,
    n: Annotated[int, typer.Option("--n", help="Highest moment order.")] = 2,
    regular: options.Regular = None,
    factor: options.Factor = None,
    q: options.Q = None,
    grid: options.Grid = None,
    tol: options.Tol = None,
    max_iters: options.MaxIters = None,
    restarts: options.Restarts = None,
):
    """Exponents of E[Z^n] for n = 1..N next to n times the annealed exponent.

    Example:
      bethe moments --regular 2 2 --factor not-equal --n 2
    """
    if n < 1:
        raise ConfigError(f"--n must be >= 1, got {n}")
    values = resolve.settings(
        ctx,
        regular=regular,
        factor=factor,
        q=q,
        grid=grid,
        tol=tol,
        max_iters=max_iters,
        restarts=restarts,
    )
    spec = resolve.require_regular(resolve.resolve_ensemble(values), "moments")
    cfg = resolve.run_config("moments", values, spec)
    cap = int(values.get("table_cap", TABLE_CAP))

    rows = []
    first = None
    for order in range(1, n + 1):
        result = annealed_ops.moment_exponent(
            spec, order, cfg.solve, cfg.newton, cfg.grid, cap, cfg.threads
        )
        first = result.value if first is None else first
        rows.append(
            {
                "n": order,
                "value": to_units(result.value, cfg.units),
                "n_times_annealed": to_units(order * first, cfg.units),
                "gap": to_units(result.value - order * first, cfg.units),
                "provenance": result.provenance.value,
            }
        )

    payload = {"value": rows[-1]["value"], "moments": rows, "config": cfg.as_dict()}
    lines = [
        f"n={row['n']}  {row['value']:.9g}  n*annealed {row['n_times_annealed']:.9g}"
        f"  gap {row['gap']:.3g}"
        for row in rows
    ]
    output.respond(ctx, payload, "\n".join(lines))


@error_feedback
def ldpc(
    ctx: typer.Context,
    regular: options.Regular = None,
    grid: options.Grid = None,
    tol: options.Tol = None,
    out: options.Output = None,
):
    """Closed-form weight-distribution growth rate of a regular LDPC ensemble, as CSV.

    Example:
      bethe ldpc --regular 3 6 --grid 99
    """
    values = resolve.settings(ctx, regular=regular, grid=grid, tol=tol, output=out)
    l, r = (int(v) for v in values.get("regular") or resolve.DEFAULT_REGULAR)
    values = {**values, "regular": [l, r], "factor": "parity"}
    cfg = resolve.run_config("ldpc", values)
    cfg.ensemble = {"kind": "regular", "l": l, "r": r}
    tol_value = float(values.get("tol", 1e-9))

    curve = ldpc_growth_curve(l, r, cfg.grid, max(tol_value, 1e-9))
    header = ["omega", "value", "h", "y", "z"]
    rows = [
        [p.omega, to_units(value, cfg.units), p.h, p.y, p.z]
        for p, value in curve
        if np.isfinite(p.h)
    ]
    top = max(rows, key=lambda row: row[1], default=None)
    payload = {
        "value": None if top is None else top[1],
        "units": cfg.units.value,
        "converged": len(rows) == len(curve),
        "provenance": Provenance.GRID.value,
        "omega": None if top is None else top[0],
        "config": cfg.as_dict(),
        "rows": [dict(zip(header, row, strict=True)) for row in rows],
    }
    if output.echo_json(payload, ctx):
        return
    output.emit_csv(ctx, header, rows, cfg.as_dict(), cfg.output)
