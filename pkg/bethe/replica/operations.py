"""Replica-symmetric free energy by population dynamics."""

import logging
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from bethe.bp.solvers import solve_regular
from bethe.core.errors import PreconditionError
from bethe.core.models import (
    EqualityReport,
    MessagePair,
    PdOptions,
    PdReport,
    Population,
    PopulationInit,
    RegularSpec,
    RsResult,
    SolveOptions,
)
from bethe.energy.annealed import annealed_regular
from bethe.replica.population import Contractor, de_step

logger = logging.getLogger(__name__)

CHUNK = 10_000
DELTA_FLOOR = 1e-9


@dataclass
class FixedPointSurvey:
    best: RsResult
    results: list[RsResult]
    multiple: bool


def _log_terms(
    spec: RegularSpec,
    contractor: Contractor,
    pop_p: np.ndarray,
    pop_phat: np.ndarray,
    samples: int,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Samples of log Z_f (r draws from P), log Z_v (l from Phat), log Z_fv (one each)."""
    l, r = spec.l, spec.r
    size = pop_p.shape[0]
    z_f, z_v, z_fv = [], [], []
    for start in range(0, samples, CHUNK):
        n = min(CHUNK, samples - start)
        z_f.append(contractor.full(pop_p[rng.integers(size, size=(n, r))]))
        z_v.append(np.prod(pop_phat[rng.integers(size, size=(n, l))], axis=1).sum(axis=1))
        pair = pop_p[rng.integers(size, size=n)] * pop_phat[rng.integers(size, size=n)]
        z_fv.append(pair.sum(axis=1))
    with np.errstate(divide="ignore"):
        return tuple(np.log(np.concatenate(z)) for z in (z_f, z_v, z_fv))


def _estimate(spec: RegularSpec, terms: tuple[np.ndarray, ...]) -> tuple[float, float]:
    weights = (spec.l / spec.r, 1.0, -float(spec.l))
    if not all(np.all(np.isfinite(t)) for t in terms):
        return float("-inf"), float("inf")
    value = sum(w * float(np.mean(t)) for w, t in zip(weights, terms, strict=True))
    variance = sum(
        w**2 * float(np.var(t, ddof=1)) / len(t) for w, t in zip(weights, terms, strict=True)
    )
    return value, float(np.sqrt(variance))


def initial_populations(
    spec: RegularSpec,
    init: PopulationInit,
    pd_opts: PdOptions,
    rng: np.random.Generator,
    messages: MessagePair | None = None,
) -> tuple[Population, Population]:
    size, q = pd_opts.population, spec.q
    if init == PopulationInit.RANDOM:
        return (
            Population(rng.dirichlet(np.ones(q), size=size)),
            Population(rng.dirichlet(np.ones(q), size=size)),
        )
    if init == PopulationInit.ANNEALED:
        if messages is None:
            messages, _ = solve_regular(spec, SolveOptions(rng_seed=pd_opts.rng_seed))
    else:
        messages = MessagePair.uniform(q)
    return Population.delta(messages.m_vf, size), Population.delta(messages.m_fv, size)


def rs_free_energy(
    spec: RegularSpec,
    pd_opts: PdOptions | None = None,
    init: PopulationInit = PopulationInit.UNIFORM,
    messages: MessagePair | None = None,
    progress: Callable[[int, int], None] | None = None,
) -> RsResult:
    """(l/r)<log Z_f> + <log Z_v> - l <log Z_fv> after `sweeps` population sweeps."""
    pd_opts = pd_opts or PdOptions()
    rng = np.random.default_rng(pd_opts.rng_seed)
    contractor = Contractor(spec.factor)
    pop_p, pop_phat = initial_populations(spec, init, pd_opts, rng, messages)

    halfway = max(1, pd_opts.sweeps // 2)
    first_half = None
    redraws, drift = 0, 0.0
    for sweep in range(1, pd_opts.sweeps + 1):
        pop_p, pop_phat, bad, drift = de_step(
            pop_p, pop_phat, spec.factor, spec.l, spec.r, rng, pd_opts.blocks, contractor
        )
        redraws += bad
        if sweep == halfway and pd_opts.sweeps > 1:
            first_half = _estimate(
                spec,
                _log_terms(spec, contractor, pop_p.members, pop_phat.members, pd_opts.samples, rng),
            )
        if progress:
            progress(sweep, pd_opts.sweeps)

    terms = _log_terms(spec, contractor, pop_p.members, pop_phat.members, pd_opts.samples, rng)
    value, stderr = _estimate(spec, terms)
    early, early_err = first_half if first_half else (value, stderr)
    if np.isfinite(value) and np.isfinite(early):
        gap = abs(value - early)
        equilibrated = bool(gap <= 2.0 * np.hypot(stderr, early_err) + DELTA_FLOOR)
    else:
        equilibrated = False
    if not equilibrated:
        logger.warning(f"RS populations not equilibrated: halves {early:.6g} vs {value:.6g}")
    if redraws:
        logger.info(f"Population dynamics redrew {redraws} degenerate members")
    report = PdReport(pd_opts.sweeps, redraws, drift, equilibrated, (early, value))
    return RsResult(value, stderr, report, init)


def rs_fixed_points(spec: RegularSpec, pd_opts: PdOptions | None = None) -> FixedPointSurvey:
    """Runs the uniform-delta, annealed-delta and random initializations; the max wins."""
    pd_opts = pd_opts or PdOptions()
    results = [rs_free_energy(spec, pd_opts, init) for init in PopulationInit]
    finite = [res for res in results if np.isfinite(res.value)]
    best = max(finite or results, key=lambda res: res.value)
    multiple = any(
        abs(res.value - best.value) > 3.0 * np.hypot(res.stderr, best.stderr) + DELTA_FLOOR
        for res in finite
    )
    if multiple:
        logger.info("Population dynamics reached several distinct fixed points")
    return FixedPointSurvey(best, results, multiple)


def check_annealed_rs_equality(
    spec: RegularSpec,
    pd_opts: PdOptions | None = None,
    opts: SolveOptions | None = None,
    grid: int = 0,
) -> EqualityReport:
    """Delta populations at the annealed stationary messages against the annealed value."""
    if not spec.factor.perm_invariant:
        raise PreconditionError("annealed/RS comparison needs a permutation-invariant factor")
    annealed = annealed_regular(spec, opts, grid=grid)
    rs = rs_free_energy(spec, pd_opts, PopulationInit.ANNEALED, annealed.messages)
    difference = rs.value - annealed.value
    tolerance = max(3.0 * rs.stderr, DELTA_FLOOR)
    return EqualityReport(
        annealed=annealed.value,
        rs=rs.value,
        stderr=rs.stderr,
        difference=difference,
        within_tolerance=bool(abs(difference) <= tolerance),
    )
