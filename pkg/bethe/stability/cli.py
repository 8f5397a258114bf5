from typing import Annotated

import numpy as np
import typer

from bethe.cli import options, output, resolve
from bethe.cli.errors import error_feedback
from bethe.core.errors import ConfigError
from bethe.ensemble.factors import binary_csp_factor
from bethe.lib.format import format_vector
from bethe.stability.operations import binary_csp_stability_fraction, paramagnetic_stability


def _spectrum(eigenvalues: np.ndarray) -> str:
    values = np.real_if_close(eigenvalues, tol=1000)
    if np.iscomplexobj(values):
        return ", ".join(f"{v.real:.6g}{v.imag:+.6g}j" for v in values)
    return format_vector(values)


@error_feedback
def stability(
    ctx: typer.Context,
    binary_csp: Annotated[
        tuple[int, int] | None,
        typer.Option("--binary-csp", help="Binary CSP factor of degree R and imbalance K."),
    ] = None,
    factor: options.Factor = None,
    r: Annotated[int | None, typer.Option("--r", help="Factor arity.")] = None,
    q: options.Q = None,
):
    """Linear stability of the uniform BP fixed point.

    Example:
      bethe stability --binary-csp 20 1
      bethe stability --factor parity --r 4
    """
    values = resolve.settings(ctx, factor=factor, q=q)
    closed_form = None
    if binary_csp is not None and all(v is not None for v in binary_csp):
        arity, k = binary_csp
        table = binary_csp_factor(arity, k)
        closed_form = binary_csp_stability_fraction(arity, k)
        label = f"binary-csp:{k}"
    else:
        if r is None:
            if values.get("regular"):
                r = int(values["regular"][1])
            else:
                raise ConfigError("stability needs --binary-csp R K or --factor NAME --r R")
        label = str(values.get("factor", "f1"))
        table = resolve.resolve_factor(label, r, int(values.get("q", 2)))
        arity = r

    report = paramagnetic_stability(table, arity)
    payload = {
        "factor": label,
        "r": arity,
        "q": table.q,
        "value": report.max_nontrivial_abs,
        "trivial_eigenvalue": report.trivial_eigenvalue,
        "eigenvalues": report.eigenvalues,
        "stable": report.stable,
        "marginal": report.marginal,
        "symmetric": report.symmetric,
    }
    if closed_form is not None:
        payload["closed_form"] = float(closed_form)
        payload["closed_form_exact"] = f"{closed_form.numerator}/{closed_form.denominator}"

    verdict = "marginal" if report.marginal else ("stable" if report.stable else "unstable")
    lines = [
        f"{label} r={arity}: max |lambda| {report.max_nontrivial_abs:.9f}  ({verdict})",
        f"spectrum  {_spectrum(report.eigenvalues)}",
    ]
    if closed_form is not None:
        lines.append(f"closed form  {closed_form} = {float(closed_form):.9f}")
    output.respond(ctx, payload, "\n".join(lines))
