"""Resolution of ensembles, factors and solver options from flags and the config file."""

import logging

import typer

from bethe.core.errors import ConfigError, SpecError
from bethe.core.models import (
    Alphabet,
    FactorTable,
    FieldSpec,
    IrregularSpec,
    NewtonOptions,
    PdOptions,
    PoissonSpec,
    RandomFieldSpec,
    RegularSpec,
    RunConfig,
    SolveOptions,
    Units,
)
from bethe.core.protocols import Ensemble
from bethe.ensemble import factors
from bethe.lib import config, paths

logger = logging.getLogger(__name__)

DEFAULT_REGULAR = (3, 6)
FACTOR_NAMES = "f1, parity, equality, not-equal, binary-csp:K, file:PATH"


def _given(value) -> bool:
    if value is None:
        return False
    if isinstance(value, tuple | list):
        return len(value) > 0 and all(v is not None for v in value)
    return True


def settings(ctx: typer.Context, **flags) -> dict:
    """Command flags over global flags over config file values."""
    obj = ctx.obj or {}
    globals_ = {k: obj[k] for k in ("seed", "threads", "bits") if obj.get(k) is not None}
    merged = config.merge(obj.get("config") or {}, globals_)
    return config.merge(merged, {k: v for k, v in flags.items() if _given(v)})


def resolve_factor(ref: str, arity: int, q: int = 2, cap: int = factors.TABLE_CAP) -> FactorTable:
    """Factor table from a name: f1, parity, equality, not-equal, binary-csp:K or file:PATH."""
    name, _, arg = ref.partition(":")
    name = name.strip().lower()
    alphabet = Alphabet(q)
    factors.check_table_size(q, arity, cap)
    if name in ("f1", "ones"):
        return factors.ones_factor(arity, alphabet)
    if name == "parity":
        return factors.parity_check_factor(arity, alphabet)
    if name == "equality":
        return factors.equality_factor(arity, alphabet)
    if name == "not-equal":
        if arity != 2:
            raise SpecError(f"not-equal is a pairwise factor, ensemble needs arity {arity}")
        return factors.not_equal_factor(alphabet)
    if name == "binary-csp":
        try:
            k = int(arg)
        except ValueError as e:
            raise ConfigError(f"binary-csp needs an integer K, got {ref!r}") from e
        return factors.binary_csp_factor(arity, k)
    if name == "file":
        table = factors.load_factor(paths.factor_path(arg))
        if table.arity != arity or table.q != q:
            raise SpecError(
                f"factor file has arity {table.arity}, q {table.q}; need arity {arity}, q {q}"
            )
        return table
    raise ConfigError(f"unknown factor {ref!r}; expected one of {FACTOR_NAMES}")


def parse_degree_law(text: str, what: str) -> dict[int, float]:
    """`i:p,j:p` to {i: p, j: p}."""
    law = {}
    for part in str(text).split(","):
        degree, sep, prob = part.strip().partition(":")
        try:
            law[int(degree)] = float(prob) if sep else 1.0
        except ValueError as e:
            raise ConfigError(f"{what} entry {part!r} is not degree:probability") from e
    return law


def parse_field(text: str, q: int) -> tuple[FieldSpec, float]:
    """`h0,h1,...[@p]` to a field and its probability."""
    values, _, prob = str(text).partition("@")
    try:
        h = [float(v) for v in values.split(",")]
        p = float(prob) if prob else 1.0
    except ValueError as e:
        raise ConfigError(f"field {text!r} must be numbers h0,h1,... with optional @p") from e
    if len(h) != q:
        raise ConfigError(f"field {text!r} has {len(h)} entries, alphabet has {q}")
    return FieldSpec(h), p


def resolve_fields(values: dict, q: int) -> FieldSpec | RandomFieldSpec | None:
    raw = values.get("field") or []
    if not raw:
        return None
    parsed = [parse_field(text, q) for text in raw]
    if len(parsed) == 1 and parsed[0][1] == 1.0:
        return parsed[0][0]
    return RandomFieldSpec(tuple(h for h, _ in parsed), tuple(p for _, p in parsed))


def resolve_ensemble(values: dict) -> Ensemble:
    """Regular, Poisson or irregular ensemble; exactly one kind may be named."""
    q = int(values.get("q", 2))
    cap = int(values.get("table_cap", factors.TABLE_CAP))
    ref = values.get("factor", "f1")
    named = [k for k in ("regular", "poisson", "var_degrees") if values.get(k)]
    if len(named) > 1:
        raise ConfigError(f"choose one ensemble kind, got {', '.join(named)}")

    if values.get("poisson"):
        alpha, k = values["poisson"]
        k = int(k)
        return PoissonSpec(float(alpha), k, resolve_factor(ref, k, q, cap))
    if values.get("var_degrees"):
        if not values.get("check_degrees"):
            raise ConfigError("--var-degrees needs --check-degrees")
        big_l = parse_degree_law(values["var_degrees"], "variable degree")
        big_r = parse_degree_law(values["check_degrees"], "check degree")
        table = {j: resolve_factor(ref, j, q, cap) for j in big_r}
        return IrregularSpec(big_l, big_r, table)
    l, r = (int(v) for v in values.get("regular") or DEFAULT_REGULAR)
    return RegularSpec(l, r, resolve_factor(ref, r, q, cap))


def describe_ensemble(spec: Ensemble) -> dict:
    if isinstance(spec, RegularSpec):
        return {"kind": spec.kind.value, "l": spec.l, "r": spec.r}
    if isinstance(spec, PoissonSpec):
        return {"kind": spec.kind.value, "alpha": spec.alpha, "k": spec.k}
    return {"kind": spec.kind.value, "L": spec.L, "R": spec.R}


def require_regular(spec: Ensemble, command: str) -> RegularSpec:
    if not isinstance(spec, RegularSpec):
        raise ConfigError(f"{command} needs a regular ensemble (--regular L R)")
    return spec


def solve_options(values: dict) -> SolveOptions:
    defaults = SolveOptions()
    return SolveOptions(
        tol=float(values.get("tol", defaults.tol)),
        max_iters=int(values.get("max_iters", defaults.max_iters)),
        damping=float(values.get("damping", defaults.damping)),
        restarts=int(values.get("restarts", defaults.restarts)),
        rng_seed=int(values.get("seed", defaults.rng_seed)),
    )


def pd_options(values: dict) -> PdOptions:
    defaults = PdOptions()
    return PdOptions(
        population=int(values.get("pop", defaults.population)),
        sweeps=int(values.get("sweeps", defaults.sweeps)),
        samples=int(values.get("samples", defaults.samples)),
        rng_seed=int(values.get("seed", defaults.rng_seed)),
    )


def run_config(command: str, values: dict, spec: Ensemble | None = None) -> RunConfig:
    return RunConfig(
        command=command,
        ensemble=describe_ensemble(spec) if spec is not None else {},
        factor=str(values.get("factor", "f1")),
        q=int(values.get("q", 2)),
        output=values.get("output"),
        grid=int(values.get("grid", 201)),
        solve=solve_options(values),
        newton=NewtonOptions(),
        seed=int(values.get("seed", 0)),
        threads=values.get("threads"),
        units=Units.BITS if values.get("bits") else Units.NATS,
    )
