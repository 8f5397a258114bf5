"""Finite-N expected partition functions by summing over integer types."""

import logging
from dataclasses import dataclass
from math import comb

import numpy as np
from scipy.special import logsumexp

from bethe.core.errors import BudgetExceededError, InconsistentTypeError, SpecError
from bethe.core.models import FiniteTypePair, RegularSpec
from bethe.lib.combinatorics import (
    all_tuples,
    compositions,
    log_factorial_table,
    log_multinomial,
    symbol_counts,
)

logger = logging.getLogger(__name__)

ENUM_BUDGET = 10**7


@dataclass
class FiniteExponent:
    n: int
    value: float
    gap: float | None = None


def factor_count(n: int, spec: RegularSpec) -> int:
    if n < 1:
        raise SpecError(f"N must be >= 1, got {n}")
    if (spec.l * n) % spec.r:
        raise SpecError(f"l*N = {spec.l * n} is not divisible by r = {spec.r}")
    return spec.l * n // spec.r


def _tuple_counts(spec: RegularSpec) -> np.ndarray:
    return symbol_counts(all_tuples(spec.q, spec.r), spec.q)


def expected_type_count(n: int, spec: RegularSpec, pair: FiniteTypePair) -> float:
    """log E[N(v, u)] = log[ N!/prod v! * M!/prod u! * prod (l v(x))! / (lN)! ]."""
    m = factor_count(n, spec)
    v = np.asarray(pair.v, dtype=np.int64)
    u = np.asarray(pair.u, dtype=np.int64).reshape(-1)
    if v.shape != (spec.q,) or u.shape != (spec.q**spec.r,):
        raise InconsistentTypeError(f"type shapes {v.shape}, {u.shape} do not match the ensemble")
    if np.any(v < 0) or np.any(u < 0) or v.sum() != n or u.sum() != m:
        raise InconsistentTypeError(f"v must sum to N={n} and u to M={m}, nonnegative")
    marginal = u @ _tuple_counts(spec)
    if np.any(marginal != spec.l * v):
        raise InconsistentTypeError(f"edge marginals {marginal} differ from l*v = {spec.l * v}")
    table = log_factorial_table(spec.l * n)
    return float(
        log_multinomial(v) + log_multinomial(u) + table[spec.l * v].sum() - table[spec.l * n]
    )


def exact_annealed_finite(n: int, spec: RegularSpec, budget: int = ENUM_BUDGET) -> float:
    """(1/N) log sum over consistent (v, u) of E[N(v, u)] prod f^u."""
    m = factor_count(n, spec)
    flat = spec.factor.values.reshape(-1)
    support = np.flatnonzero(flat > 0)
    needed = comb(m + len(support) - 1, len(support) - 1)
    if needed > budget:
        raise BudgetExceededError("factor-type enumeration", needed, budget)

    cells = compositions(m, len(support))
    marginal = cells @ _tuple_counts(spec)[support]
    consistent = np.all(marginal % spec.l == 0, axis=1)
    cells, v = cells[consistent], marginal[consistent] // spec.l
    if not len(cells):
        return float("-inf")

    table = log_factorial_table(spec.l * n)
    log_counts = (
        log_multinomial(v) + log_multinomial(cells) + table[spec.l * v].sum(axis=1)
    ) - table[spec.l * n]
    log_terms = log_counts + cells @ np.log(flat[support])
    logger.debug(f"N={n}: {len(cells)} consistent types")
    return float(logsumexp(log_terms)) / n


def exact_annealed_curve(
    spec: RegularSpec,
    sizes: list[int],
    asymptotic: float | None = None,
    budget: int = ENUM_BUDGET,
) -> list[FiniteExponent]:
    """Finite-N exponents, with the gap to an asymptotic value when given."""
    out = []
    for n in sizes:
        value = exact_annealed_finite(n, spec, budget)
        gap = None if asymptotic is None else value - asymptotic
        out.append(FiniteExponent(n, value, gap))
    return out
