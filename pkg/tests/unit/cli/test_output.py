import json

import numpy as np
import pytest
import typer
from typer.testing import CliRunner

from bethe.cli import output
from bethe.cli.spinner import Spinner, spinner_for
from bethe.core.models import Provenance, Solver


@pytest.fixture
def ctx(mocker):
    context = mocker.Mock()
    context.obj = None
    return context


# === JSON ===
def test_jsonable_numpy_values():
    data = {
        "a": np.float64(0.5),
        "b": np.arange(3),
        "c": np.bool_(True),
        1: (np.int64(4),),
    }
    assert output.jsonable(data) == {"a": 0.5, "b": [0, 1, 2], "c": True, "1": [4]}


def test_jsonable_non_finite_and_enums():
    assert output.jsonable([float("-inf"), float("nan")]) == ["-inf", "nan"]
    assert output.jsonable(Provenance.NEWTON) == "newton"
    assert output.jsonable(complex(1.0, -2.0)) == {"re": 1.0, "im": -2.0}


def test_out_json_is_valid_json():
    text = output.out_json({"value": float("inf"), "nu": np.array([0.5, 0.5])})
    assert json.loads(text) == {"value": "inf", "nu": [0.5, 0.5]}


def test_init_context_sets_flags(ctx):
    output.init_context(ctx, json_output=True, seed=3)
    assert ctx.obj == {"json_output": True, "quiet_output": False, "seed": 3}
    assert output.is_json_mode(ctx)
    assert not output.is_quiet_mode(ctx)


# === CSV ===
def test_render_csv_layout():
    text = output.render_csv(
        ["nu1", "value", "converged", "solver"],
        [[0.25, 0.1234567890123456, True, Solver.BP], [1.0, float("-inf"), False, Solver.NEWTON]],
        {"grid": 2, "command": "growth-rate"},
    )
    lines = text.splitlines()
    assert lines[0] == '# config {"command": "growth-rate", "grid": 2}'
    assert lines[1] == "nu1,value,converged,solver"
    assert lines[2] == "0.25,0.123456789012,true,bp"
    assert lines[3] == "1,-inf,false,newton"


def test_emit_csv_to_file(ctx, tmp_path, capsys):
    target = tmp_path / "out" / "curve.csv"
    output.init_context(ctx)
    output.emit_csv(ctx, ["value"], [[1.0], [2.0]], {}, str(target))
    assert target.read_text().splitlines()[1:] == ["value", "1", "2"]
    assert "Wrote 2 rows" in capsys.readouterr().out


def test_respond_modes(ctx, capsys):
    output.init_context(ctx, quiet_output=True)
    output.respond(ctx, {"value": 1.0}, "value 1.0")
    assert capsys.readouterr().out == ""
    output.init_context(ctx, json_output=True)
    output.respond(ctx, {"value": 1.0}, "value 1.0")
    assert json.loads(capsys.readouterr().out) == {"value": 1.0}


# === SPINNER ===
def test_spinner_disabled_for_json_and_quiet(ctx):
    output.init_context(ctx, json_output=True)
    assert spinner_for(ctx, "grid") is None
    output.init_context(ctx, quiet_output=True)
    assert spinner_for(ctx, "grid") is None
    output.init_context(ctx)
    assert isinstance(spinner_for(ctx, "grid"), Spinner)


def test_spinner_writes_progress_to_stderr(capsys):
    spinner = Spinner("grid")
    spinner.progress(1, 4)
    spinner.finish("4 grid points")
    err = capsys.readouterr().err
    assert "grid 1/4" in err
    assert "4 grid points" in err


def test_echo_json_inside_command():
    app = typer.Typer()

    @app.command()
    def show(ctx: typer.Context):
        output.init_context(ctx, json_output=True)
        output.echo_json({"ok": np.bool_(True)}, ctx)

    result = CliRunner().invoke(app, [])
    assert result.exit_code == 0
    assert json.loads(result.stdout) == {"ok": True}
