"""Free-energy evaluators at types and at stationary messages."""

import numpy as np

from bethe.bp import terms
from bethe.bp.updates import update_f_to_v, update_v_to_f_regular
from bethe.core.errors import InconsistentTypeError, SpecError
from bethe.core.models import (
    FieldSpec,
    MessagePair,
    NewtonResult,
    PoissonSpec,
    RegularSpec,
    TypeAssignment,
)
from bethe.lib.logspace import entropy, is_distribution, normalize, safe_log

CONSISTENCY_TOL = 1e-10


def type_marginal(mu: np.ndarray) -> np.ndarray:
    """(1/r) sum_i of the position-i marginals of a dense factor-type mu."""
    r = mu.ndim
    total = np.zeros(mu.shape[0])
    for i in range(r):
        total += mu.sum(axis=tuple(j for j in range(r) if j != i))
    return total / r


def bethe_type_objective(spec: RegularSpec, ta: TypeAssignment) -> float:
    """(l/r) H(mu) - (l-1) H(nu) + (l/r) sum mu log f; -inf when mu leaves supp(f)."""
    f, l, r = spec.factor, spec.l, spec.r
    nu, mu = np.asarray(ta.nu, dtype=np.float64), np.asarray(ta.mu, dtype=np.float64)
    if mu.shape != f.values.shape or nu.shape != (f.q,):
        raise SpecError(f"type shapes {nu.shape}, {mu.shape} do not match the factor")
    if not (is_distribution(nu) and is_distribution(mu.reshape(-1))):
        raise InconsistentTypeError("nu and mu must be normalized distributions")
    gap = float(np.max(np.abs(type_marginal(mu) - nu)))
    if gap > CONSISTENCY_TOL:
        raise InconsistentTypeError(f"mu marginals differ from nu by {gap:.3e}")
    charged = mu > 0
    if np.any(f.values[charged] == 0):
        return float("-inf")
    energy = float(np.sum(mu[charged] * np.log(f.values[charged])))
    return l / r * (entropy(mu.reshape(-1)) + energy) - (l - 1) * entropy(nu)


def reconstruct_type(
    spec: RegularSpec, mp: MessagePair, h: FieldSpec | None = None
) -> TypeAssignment:
    """nu proportional to h m_fv^l and mu proportional to f prod_i m_vf(x_i), dense."""
    l, r = spec.l, spec.r
    log_nu = l * safe_log(mp.m_fv)
    if h is not None:
        log_nu = log_nu + safe_log(h.h)
    nu = normalize(np.exp(log_nu - np.max(log_nu)), "variable type")
    product = mp.m_vf
    for _ in range(r - 1):
        product = np.multiply.outer(product, mp.m_vf)
    mu = normalize(spec.factor.values * product, "factor type")
    return TypeAssignment(nu, mu)


def fixed_point_residual(mp: MessagePair, spec: RegularSpec) -> float:
    m_fv = update_f_to_v(spec.factor, mp.m_vf)
    m_vf = update_v_to_f_regular(m_fv, spec.l)
    return MessagePair(m_vf, m_fv).distance(mp)


def annealed_regular_at(mp: MessagePair, spec: RegularSpec, tol: float = 1e-10) -> float:
    """(l/r) log Z_f + log Z_v - l log Z_fv at a fixed point of the regular update."""
    residual = fixed_point_residual(mp, spec)
    if residual > 10 * tol:
        raise SpecError(f"messages are not a fixed point (residual {residual:.3e})")
    return terms.regular_value(spec, mp)


def growth_rate_fixed_type(
    spec: RegularSpec, nu: np.ndarray, solution: MessagePair | NewtonResult
) -> float:
    """Growth rate at fixed variable type nu, from BP messages or a Newton optimum."""
    nu = np.asarray(nu, dtype=np.float64)
    if isinstance(solution, NewtonResult):
        if not solution.feasible:
            return float("-inf")
        return spec.l / spec.r * solution.entropy_energy - (spec.l - 1) * entropy(nu)
    return terms.fixed_type_value(spec, nu, solution)


def poisson_type_objective(spec: PoissonSpec, nu: np.ndarray) -> float:
    """H(nu) + alpha log sum_x f(x) prod_i nu(x_i)."""
    nu = np.asarray(nu, dtype=np.float64)
    return entropy(nu) + spec.alpha * terms.log_z_f(spec.factor, nu)
