import logging
import sys

import typer

from bethe.cli import output
from bethe.cli.errors import EXIT_CONFIG
from bethe.core.errors import ConfigError
from bethe.energy import cli as energy_cli
from bethe.lib import config, paths
from bethe.oracle import cli as oracle_cli
from bethe.replica import cli as replica_cli
from bethe.stability import cli as stability_cli

app = typer.Typer(
    invoke_without_command=True,
    no_args_is_help=False,
    add_completion=False,
    context_settings={"help_option_names": ["-h", "--help"]},
)


@app.callback(invoke_without_command=True, context_settings={"help_option_names": ["-h", "--help"]})
def main_callback(
    ctx: typer.Context,
    json_output: bool = typer.Option(False, "--json", "-j", help="Output in JSON format."),
    quiet_output: bool = typer.Option(
        False, "--quiet", "-q", help="Suppress non-essential output."
    ),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging on stderr."),
    bits: bool = typer.Option(False, "--bits", help="Report values in bits instead of nats."),
    config_file: str = typer.Option(None, "--config", help="YAML run configuration."),
    threads: int = typer.Option(None, "--threads", help="Worker processes for grid sweeps."),
    seed: int = typer.Option(None, "--seed", help="Seed for random restarts and populations."),
):
    """Annealed free energies of random sparse factor-graph ensembles.

    Belief propagation, Newton duals, population dynamics and finite-N counts."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        file_values = config.load_config(paths.config_path(config_file))
    except ConfigError as e:
        typer.echo(f"Config error: {e}", err=True)
        raise typer.Exit(EXIT_CONFIG) from e

    output.init_context(
        ctx,
        json_output=json_output,
        quiet_output=quiet_output,
        config=file_values,
        bits=bits or None,
        threads=threads,
        seed=seed,
    )

    if ctx.invoked_subcommand is None and not quiet_output:
        typer.echo(ctx.get_help())
        typer.echo("\nCommands:")
        typer.echo("  annealed     annealed free energy (regular, irregular, Poisson, fields)")
        typer.echo("  growth-rate  growth rate at fixed variable type, CSV")
        typer.echo("  moments      exponents of higher moments of Z")
        typer.echo("  ldpc         closed-form LDPC weight distribution, CSV")
        typer.echo("  stability    linear stability of the uniform fixed point")
        typer.echo("  rs           replica-symmetric free energy by population dynamics")
        typer.echo("  oracle       finite-N exact E[Z] against the annealed value")


app.command("growth-rate")(energy_cli.growth_rate)
app.command("annealed")(energy_cli.annealed)
app.command("moments")(energy_cli.moments)
app.command("ldpc")(energy_cli.ldpc)
app.command("stability")(stability_cli.stability)
app.command("rs")(replica_cli.rs)
app.command("oracle")(oracle_cli.oracle)


def main() -> None:
    """Entry point for bethe command."""
    try:
        app()
    except SystemExit:
        raise
    except BaseException as e:
        raise SystemExit(1) from e


__all__ = ["app", "main"]
