import json as json_lib
import math
from pathlib import Path

import numpy as np
import typer

from bethe.lib.format import csv_number


def init_context(
    ctx: typer.Context,
    json_output: bool = False,
    quiet_output: bool = False,
    **settings,
) -> None:
    """Initialize CLI context with output flags and global run settings."""
    if ctx.obj is None or not isinstance(ctx.obj, dict):
        ctx.obj = {}
    ctx.obj["json_output"] = json_output
    ctx.obj["quiet_output"] = quiet_output
    ctx.obj.update(settings)


def jsonable(value):
    """numpy scalars and arrays to plain Python; non-finite floats spelled as strings."""
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, list | tuple):
        return [jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return jsonable(value.tolist())
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, complex | np.complexfloating):
        return {"re": jsonable(float(value.real)), "im": jsonable(float(value.imag))}
    if isinstance(value, float | np.floating):
        value = float(value)
        return value if math.isfinite(value) else csv_number(value)
    if hasattr(value, "value") and isinstance(getattr(value, "value", None), str):
        return value.value
    return value


def out_json(data) -> str:
    return json_lib.dumps(jsonable(data), indent=2)


def is_json_mode(ctx: typer.Context) -> bool:
    """Check if JSON output mode is enabled."""
    return ctx.obj.get("json_output", False) if ctx.obj else False


def is_quiet_mode(ctx: typer.Context) -> bool:
    """Check if quiet output mode is enabled."""
    return ctx.obj.get("quiet_output", False) if ctx.obj else False


def echo_json(data, ctx: typer.Context) -> bool:
    """Output data as JSON if in JSON mode. Returns True if output, False otherwise."""
    if is_json_mode(ctx):
        typer.echo(out_json(data))
        return True
    return False


def echo_text(msg: str, ctx: typer.Context) -> None:
    """Echo message only if not in quiet mode."""
    if not is_quiet_mode(ctx):
        typer.echo(msg)


def respond(ctx: typer.Context, json_data: dict | list | None = None, text_msg: str = "") -> None:
    """Unified output: JSON if --json, text if not --quiet."""
    if is_json_mode(ctx):
        typer.echo(out_json(json_data))
    elif text_msg and not is_quiet_mode(ctx):
        typer.echo(text_msg)


def _csv_cell(value) -> str:
    if isinstance(value, bool | np.bool_):
        return "true" if value else "false"
    if isinstance(value, float | np.floating):
        return csv_number(float(value))
    if hasattr(value, "value") and isinstance(getattr(value, "value", None), str):
        return value.value
    return str(value)


def render_csv(header: list[str], rows: list[list], config: dict) -> str:
    """`# config {json}` line, header row, then one line per row."""
    lines = [f"# config {json_lib.dumps(jsonable(config), sort_keys=True)}", ",".join(header)]
    lines.extend(",".join(_csv_cell(cell) for cell in row) for row in rows)
    return "\n".join(lines) + "\n"


def emit_csv(
    ctx: typer.Context, header: list[str], rows: list[list], config: dict, path: str | None
) -> None:
    text = render_csv(header, rows, config)
    if path:
        target = Path(path).expanduser()
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text)
        echo_text(f"Wrote {len(rows)} rows to {target}", ctx)
        return
    typer.echo(text, nl=False)
