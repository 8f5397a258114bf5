"""Option declarations shared by the commands. Every option defaults to None so that
unset flags fall through to the config file."""

from typing import Annotated

import typer

Regular = Annotated[
    tuple[int, int] | None,
    typer.Option("--regular", help="Regular ensemble: variable degree L, factor degree R."),
]
Poisson = Annotated[
    tuple[float, int] | None,
    typer.Option("--poisson", help="Poisson ensemble: factor density ALPHA, factor degree K."),
]
VarDegrees = Annotated[
    str | None,
    typer.Option("--var-degrees", help="Irregular variable degree law, e.g. 2:0.5,4:0.5."),
]
CheckDegrees = Annotated[
    str | None,
    typer.Option("--check-degrees", help="Irregular factor degree law, e.g. 3:1."),
]
Factor = Annotated[
    str | None,
    typer.Option(
        "--factor",
        help="f1, parity, equality, not-equal, binary-csp:K or file:PATH.",
    ),
]
Q = Annotated[int | None, typer.Option("--q", help="Alphabet size.")]
Field = Annotated[
    list[str] | None,
    typer.Option("--field", help="Field h0,h1,...[@p]; repeat for a random field."),
]
Grid = Annotated[int | None, typer.Option("--grid", help="Type grid points (0 skips the grid).")]
Tol = Annotated[float | None, typer.Option("--tol", help="Fixed-point tolerance.")]
MaxIters = Annotated[int | None, typer.Option("--max-iters", help="Iterations per BP start.")]
Damping = Annotated[float | None, typer.Option("--damping", help="Damping in [0, 1).")]
Restarts = Annotated[int | None, typer.Option("--restarts", help="Random BP restarts.")]
Output = Annotated[str | None, typer.Option("--output", "-o", help="Write CSV to this path.")]
