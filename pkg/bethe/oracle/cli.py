import logging
import math
from typing import Annotated

import typer

from bethe.cli import options, output, resolve
from bethe.cli.errors import error_feedback
from bethe.core.errors import ConfigError
from bethe.core.models import OracleMode
from bethe.energy.annealed import annealed_regular
from bethe.oracle.counting import ENUM_BUDGET, exact_annealed_curve
from bethe.oracle.matching import exhaustive_E_Z

logger = logging.getLogger(__name__)


@error_feedback
def oracle(
    ctx: typer.Context,
    sizes: Annotated[
        list[int], typer.Option("--N", help="Number of variables; repeat for several sizes.")
    ],
    regular: options.Regular = None,
    factor: options.Factor = None,
    q: options.Q = None,
    exact: Annotated[
        bool, typer.Option("--exact", help="Average Z over every socket matching.")
    ] = False,
    sampled: Annotated[
        bool, typer.Option("--sampled", help="Average Z over random socket matchings.")
    ] = False,
    samples: Annotated[
        int | None, typer.Option("--samples", help="Matchings drawn with --sampled.")
    ] = None,
    grid: options.Grid = None,
):
    """Finite-N expected partition function against the asymptotic annealed value.

    By default E[Z] is summed over integer types. --exact and --sampled also average Z
    over socket matchings for a direct check.

    Example:
      bethe oracle --regular 2 2 --factor not-equal --N 2 --N 4 --N 6
    """
    if exact and sampled:
        raise ConfigError("choose one of --exact and --sampled")
    values = resolve.settings(ctx, regular=regular, factor=factor, q=q, samples=samples, grid=grid)
    spec = resolve.require_regular(resolve.resolve_ensemble(values), "oracle")
    cfg = resolve.run_config("oracle", values, spec)
    budget = int(values.get("enum_budget", ENUM_BUDGET))

    asymptotic = annealed_regular(spec, cfg.solve, cfg.newton, cfg.grid, cfg.threads).value
    curve = exact_annealed_curve(spec, sorted(set(sizes)), asymptotic, budget)

    mode = OracleMode.EXACT if exact else (OracleMode.SAMPLED if sampled else None)
    rows = []
    for point in curve:
        row = {
            "N": point.n,
            "value": point.value,
            "E_Z": math.exp(point.n * point.value),
            "gap": point.gap,
        }
        if mode is not None:
            row["matching_E_Z"] = exhaustive_E_Z(
                point.n, spec, mode, int(values.get("samples", 10_000)), cfg.seed, budget
            )
        rows.append(row)
        logger.debug(f"N={point.n}: exponent {point.value:.9g}")

    payload = {
        "asymptotic": asymptotic,
        "rows": rows,
        "mode": mode,
        "config": cfg.as_dict(),
    }
    lines = [f"annealed  {asymptotic:.9g}"]
    for row in rows:
        line = f"N={row['N']:<4} {row['value']:.9g}  E[Z] {row['E_Z']:.9g}  gap {row['gap']:+.3g}"
        if "matching_E_Z" in row:
            line += f"  matchings {row['matching_E_Z']:.9g}"
        lines.append(line)
    output.respond(ctx, payload, "\n".join(lines))
