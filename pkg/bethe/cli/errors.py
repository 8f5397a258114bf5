"""CLI error handling: report failures on stderr and exit with a category code."""

from functools import wraps

import typer
from click.exceptions import Exit

from bethe.core.errors import (
    BudgetExceededError,
    ConfigError,
    DegenerateMessageError,
    NumericalError,
)

EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_BUDGET = 4


def error_feedback(f):
    """Wrap command to catch exceptions and report them before exiting.

    Config and input errors exit 2, numerical failures 3, budget refusals 4.
    """

    @wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except (SystemExit, Exit):
            raise
        except ConfigError as e:
            typer.echo(f"Config error: {e}", err=True)
            raise typer.Exit(EXIT_CONFIG) from e
        except BudgetExceededError as e:
            typer.echo(f"Budget exceeded: {e}", err=True)
            raise typer.Exit(EXIT_BUDGET) from e
        except (NumericalError, DegenerateMessageError) as e:
            typer.echo(f"Numerical failure: {e}", err=True)
            raise typer.Exit(EXIT_NUMERICAL) from e
        except (ValueError, KeyError, TypeError) as e:
            typer.echo(f"Invalid input: {e}", err=True)
            raise typer.Exit(EXIT_CONFIG) from e
        except OSError as e:
            typer.echo(f"File error: {e}", err=True)
            raise typer.Exit(EXIT_CONFIG) from e
        except ArithmeticError as e:
            typer.echo(f"Numerical failure: {e}", err=True)
            raise typer.Exit(EXIT_NUMERICAL) from e
        except Exception as e:
            typer.echo(f"Error: {e}", err=True)
            raise typer.Exit(1) from e

    return wrapper
