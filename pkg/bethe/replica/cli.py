from typing import Annotated

import typer

from bethe.cli import options, output, resolve
from bethe.cli.errors import error_feedback
from bethe.cli.spinner import spinner_for
from bethe.lib.format import format_value, to_units
from bethe.replica.operations import check_annealed_rs_equality, rs_fixed_points


@error_feedback
def rs(
    ctx: typer.Context,
    regular: options.Regular = None,
    factor: options.Factor = None,
    q: options.Q = None,
    pop: Annotated[int | None, typer.Option("--pop", help="Population size.")] = None,
    sweeps: Annotated[int | None, typer.Option("--sweeps", help="Population sweeps.")] = None,
    samples: Annotated[
        int | None, typer.Option("--samples", help="Samples per free-energy estimate.")
    ] = None,
    tol: options.Tol = None,
):
    """Replica-symmetric free energy by population dynamics.

    Runs uniform, annealed and random initial populations and reports the largest value.
    For permutation-invariant factors the annealed value is compared with the RS value
    started at the annealed messages.

    Example:
      bethe rs --regular 3 6 --factor parity --pop 2000 --sweeps 100
    """
    values = resolve.settings(
        ctx, regular=regular, factor=factor, q=q, pop=pop, sweeps=sweeps, samples=samples, tol=tol
    )
    spec = resolve.require_regular(resolve.resolve_ensemble(values), "rs")
    cfg = resolve.run_config("rs", values, spec)
    pd_opts = resolve.pd_options(values)

    spinner = spinner_for(ctx, "population dynamics")
    if spinner:
        spinner.update("population dynamics")
    survey = rs_fixed_points(spec, pd_opts)
    equality = None
    if spec.factor.perm_invariant:
        equality = check_annealed_rs_equality(spec, pd_opts, cfg.solve)
    if spinner:
        spinner.finish("population dynamics")

    units = cfg.units
    best = survey.best
    payload = {
        "value": to_units(best.value, units),
        "stderr": to_units(best.stderr, units),
        "init": best.init,
        "equilibrated": best.report.equilibrated,
        "multiple_fixed_points": survey.multiple,
        "runs": [
            {
                "init": res.init,
                "value": to_units(res.value, units),
                "stderr": to_units(res.stderr, units),
                "equilibrated": res.report.equilibrated,
                "resampled": res.report.resampled,
                "drift": res.report.drift,
            }
            for res in survey.results
        ],
        "config": {**cfg.as_dict(), "pop": pd_opts.population, "sweeps": pd_opts.sweeps},
    }
    lines = [
        f"rs  {format_value(best.value, units)} +/- {to_units(best.stderr, units):.2g}"
        f"  [{best.init.value}]"
    ]
    for res in survey.results:
        flag = "" if res.report.equilibrated else "  (not equilibrated)"
        lines.append(f"  {res.init.value:<9} {format_value(res.value, units)}{flag}")
    if survey.multiple:
        lines.append("several distinct fixed points")

    if equality is not None:
        payload["equality"] = {
            "annealed": to_units(equality.annealed, units),
            "rs": to_units(equality.rs, units),
            "difference": to_units(equality.difference, units),
            "stderr": to_units(equality.stderr, units),
            "within_tolerance": equality.within_tolerance,
        }
        verdict = "equal" if equality.within_tolerance else "differ"
        lines.append(
            f"annealed {format_value(equality.annealed, units)} vs rs at annealed messages "
            f"{format_value(equality.rs, units)}: {verdict}"
        )
    output.respond(ctx, payload, "\n".join(lines))
