"""Fixed-point solvers for every ensemble variant.

Each solver iterates a state vector (one of the two messages) with optional damping
m <- (1 - gamma) m_new + gamma m_old, measures the L-infinity change of both messages and
restarts from the uniform point plus seeded random simplex points. Among converged starts
the largest objective wins; without any converged start the smallest residual is returned.
"""

import logging
from collections.abc import Callable
from dataclasses import dataclass, replace

import numpy as np

from bethe.bp import terms
from bethe.bp.updates import (
    update_f_to_v,
    update_f_to_v_irregular,
    update_v_to_f_field,
    update_v_to_f_fixed_type,
    update_v_to_f_irregular,
    update_v_to_f_poisson,
    update_v_to_f_random_field,
    update_v_to_f_regular,
)
from bethe.core.errors import DegenerateMessageError, NumericalError, SpecError
from bethe.core.models import (
    FieldSpec,
    IrregularSpec,
    IrregularState,
    MessagePair,
    PoissonSpec,
    PoissonState,
    RandomFieldSpec,
    RegularSpec,
    SolveOptions,
    SolveReport,
)
from bethe.lib.logspace import is_distribution, normalize_log

logger = logging.getLogger(__name__)

E_MAX = 1e6


@dataclass
class _Run:
    pair: MessagePair
    extra: object
    converged: bool
    iterations: int
    residual: float


Step = Callable[[np.ndarray], tuple[np.ndarray, MessagePair, object]]


def _iterate(step: Step, x0: np.ndarray, opts: SolveOptions, state: str = "m_vf") -> _Run:
    """Damped iteration of the state message; the returned pair carries the damped state."""
    x = np.asarray(x0, dtype=np.float64)
    gamma = opts.damping
    prev_pair: MessagePair | None = None
    best: _Run | None = None
    for it in range(1, opts.max_iters + 1):
        x_new, pair, extra = step(x)
        if gamma > 0:
            x_new = (1.0 - gamma) * x_new + gamma * x
            pair = replace(pair, **{state: x_new})
        if not np.all(np.isfinite(x_new)):
            raise DegenerateMessageError(f"non-finite message at iteration {it}")
        residual = float(np.max(np.abs(x_new - x)))
        if prev_pair is not None:
            residual = max(residual, pair.distance(prev_pair))
        if best is None or residual < best.residual:
            best = _Run(pair, extra, False, it, residual)
        if residual <= opts.tol:
            return _Run(pair, extra, True, it, residual)
        x, prev_pair = x_new, pair
    assert best is not None
    best.iterations = opts.max_iters
    return best


def _starts(q: int, opts: SolveOptions, init: np.ndarray | None) -> list[np.ndarray]:
    if init is not None:
        return [np.asarray(init, dtype=np.float64)]
    rng = np.random.default_rng(opts.rng_seed)
    return [np.full(q, 1.0 / q)] + [rng.dirichlet(np.ones(q)) for _ in range(opts.restarts)]


def _multi_start(
    label: str,
    starts: list[np.ndarray],
    step: Step,
    value: Callable[[_Run], float],
    opts: SolveOptions,
    state: str = "m_vf",
) -> tuple[_Run | None, SolveReport]:
    runs: list[tuple[int, _Run, float]] = []
    errors: list[str] = []
    for idx, x0 in enumerate(starts):
        try:
            run = _iterate(step, x0, opts, state)
            objective = value(run)
        except DegenerateMessageError as e:
            logger.debug(f"{label}: start {idx} degenerate: {e}")
            errors.append(str(e))
            continue
        if np.isnan(objective):
            objective = float("-inf")
        runs.append((idx, run, objective))

    if not runs:
        logger.warning(f"{label}: every start hit a degenerate message")
        error = errors[0] if errors else "no starts"
        return None, SolveReport(False, 0, float("inf"), float("-inf"), 0, error, 0)

    converged = [t for t in runs if t[1].converged]
    if converged:
        idx, run, objective = max(converged, key=lambda t: t[2])
    else:
        idx, run, objective = min(runs, key=lambda t: t[1].residual)
        logger.debug(f"{label}: no start converged, best residual {run.residual:.3e}")
    report = SolveReport(
        converged=run.converged,
        iterations=run.iterations,
        residual=run.residual,
        objective=objective,
        restart=idx,
        error=errors[0] if errors else None,
        converged_starts=len(converged),
    )
    return run, report


def _check_nu(nu: np.ndarray, q: int) -> np.ndarray:
    nu = np.asarray(nu, dtype=np.float64)
    if nu.shape != (q,) or not is_distribution(nu, atol=1e-12):
        raise SpecError(f"nu must be a distribution on {q} symbols, got {nu}")
    return nu


def solve_regular(
    spec: RegularSpec, opts: SolveOptions | None = None, init: MessagePair | None = None
) -> tuple[MessagePair, SolveReport]:
    opts = opts or SolveOptions()
    f, l = spec.factor, spec.l

    def step(x):
        m_fv = update_f_to_v(f, x)
        m_vf = update_v_to_f_regular(m_fv, l)
        return m_vf, MessagePair(m_vf, m_fv), None

    starts = _starts(spec.q, opts, None if init is None else init.m_vf)
    run, report = _multi_start(
        "regular", starts, step, lambda run: terms.regular_value(spec, run.pair), opts
    )
    return (run.pair if run else MessagePair.uniform(spec.q)), report


def solve_field(
    spec: RegularSpec,
    h: FieldSpec,
    opts: SolveOptions | None = None,
    init: MessagePair | None = None,
) -> tuple[MessagePair, SolveReport]:
    opts = opts or SolveOptions()
    f, l = spec.factor, spec.l
    if h.h.shape != (spec.q,):
        raise SpecError(f"field has {h.h.shape[0]} entries, alphabet has {spec.q}")

    def step(x):
        m_fv = update_f_to_v(f, x)
        m_vf = update_v_to_f_field(h, m_fv, l)
        return m_vf, MessagePair(m_vf, m_fv), None

    starts = _starts(spec.q, opts, None if init is None else init.m_vf)
    run, report = _multi_start(
        "field", starts, step, lambda run: terms.regular_value(spec, run.pair, h), opts
    )
    return (run.pair if run else MessagePair.uniform(spec.q)), report


def solve_random_field(
    spec: RegularSpec,
    rf: RandomFieldSpec,
    opts: SolveOptions | None = None,
    init: MessagePair | None = None,
) -> tuple[MessagePair, SolveReport]:
    opts = opts or SolveOptions()
    f, l = spec.factor, spec.l
    if rf.fields[0].h.shape != (spec.q,):
        raise SpecError(f"fields have {rf.fields[0].h.shape[0]} entries, alphabet has {spec.q}")

    def step(x):
        m_fv = update_f_to_v(f, x)
        m_vf = update_v_to_f_random_field(rf, m_fv, l)
        return m_vf, MessagePair(m_vf, m_fv), None

    starts = _starts(spec.q, opts, None if init is None else init.m_vf)
    run, report = _multi_start(
        "random-field",
        starts,
        step,
        lambda run: terms.random_field_value(spec, rf, run.pair),
        opts,
    )
    return (run.pair if run else MessagePair.uniform(spec.q)), report


def solve_fixed_type(
    spec: RegularSpec,
    nu: np.ndarray,
    opts: SolveOptions | None = None,
    init: MessagePair | None = None,
) -> tuple[MessagePair, SolveReport]:
    """Single-start iteration m_vf <- nu / m_fv, m_fv <- f-to-v(m_vf).

    Starts from init.m_fv or a seeded random simplex point. Non-convergence is reported,
    not raised.
    """
    opts = opts or SolveOptions()
    nu = _check_nu(nu, spec.q)
    f = spec.factor

    def step(x):
        m_vf = update_v_to_f_fixed_type(nu, x)
        m_fv = update_f_to_v(f, m_vf)
        return m_fv, MessagePair(m_vf, m_fv), None

    if init is not None:
        start = init.m_fv
    else:
        start = np.random.default_rng(opts.rng_seed).dirichlet(np.ones(spec.q))
    run, report = _multi_start(
        "fixed-type",
        [start],
        step,
        lambda run: terms.fixed_type_value(spec, nu, run.pair),
        opts,
        state="m_fv",
    )
    return (run.pair if run else MessagePair.uniform(spec.q)), report


def solve_poisson(
    spec: PoissonSpec, opts: SolveOptions | None = None, init: MessagePair | None = None
) -> tuple[PoissonState, SolveReport]:
    """Iterates m_fv <- f-to-v(m_vf), e <- alpha k / sum m_vf m_fv, m_vf <- exp(e m_fv)."""
    opts = opts or SolveOptions()
    f = spec.factor
    mass = spec.alpha * spec.k

    def state_of(pair: MessagePair) -> PoissonState:
        return PoissonState(pair, mass / float(np.dot(pair.m_vf, pair.m_fv)))

    def step(x):
        m_fv = update_f_to_v(f, x)
        overlap = float(np.dot(x, m_fv))
        if not overlap > 0:
            raise DegenerateMessageError("messages have disjoint support")
        e = mass / overlap
        if e > E_MAX:
            raise NumericalError(f"Poisson degree parameter e={e:.3g} exceeds {E_MAX:.0g}")
        m_vf = update_v_to_f_poisson(m_fv, e)
        return m_vf, MessagePair(m_vf, m_fv), e

    starts = _starts(spec.q, opts, None if init is None else init.m_vf)
    run, report = _multi_start(
        "poisson", starts, step, lambda run: terms.poisson_value(spec, state_of(run.pair)), opts
    )
    if run is None:
        return PoissonState(MessagePair.uniform(spec.q), mass * spec.q), report
    return state_of(run.pair), report


def _normalized_weights(log_weights: dict[int, float], what: str) -> dict[int, float]:
    keys = list(log_weights)
    probs = normalize_log(np.array([log_weights[k] for k in keys]), what)
    return dict(zip(keys, probs.tolist(), strict=True))


def solve_irregular(
    spec: IrregularSpec, opts: SolveOptions | None = None, init: MessagePair | None = None
) -> tuple[IrregularState, SolveReport]:
    """Iterates r(j) ~ R_j / Z_f(j), m_fv, l(i) ~ L_i / Z_v(i), m_vf."""
    opts = opts or SolveOptions()

    def step(x):
        r_w = _normalized_weights(
            {j: np.log(rj) - terms.log_z_f(spec.factors[j], x) for j, rj in spec.R.items()},
            "factor degree weights",
        )
        m_fv = update_f_to_v_irregular(spec.factors, r_w, x)
        l_w = _normalized_weights(
            {i: np.log(li) - terms.log_z_v(m_fv, i) for i, li in spec.L.items()},
            "variable degree weights",
        )
        m_vf = update_v_to_f_irregular(m_fv, l_w)
        return m_vf, MessagePair(m_vf, m_fv), (l_w, r_w)

    def state_of(run: _Run) -> IrregularState:
        l_w, r_w = run.extra
        return IrregularState(run.pair, l_w, r_w)

    starts = _starts(spec.q, opts, None if init is None else init.m_vf)
    run, report = _multi_start(
        "irregular", starts, step, lambda run: terms.irregular_value(spec, state_of(run)), opts
    )
    if run is None:
        uniform = MessagePair.uniform(spec.q)
        return IrregularState(uniform, dict(spec.L), dict(spec.R)), report
    return state_of(run), report
