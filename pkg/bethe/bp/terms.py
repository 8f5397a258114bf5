"""Partition-function terms and the objective values assembled from them."""

import numpy as np
from scipy.special import logsumexp

from bethe.core.errors import DegenerateMessageError
from bethe.core.models import (
    FactorTable,
    FieldSpec,
    IrregularSpec,
    IrregularState,
    MessagePair,
    PoissonSpec,
    PoissonState,
    RandomFieldSpec,
    RegularSpec,
)
from bethe.lib.logspace import counts_dot_log, entropy, power_log, safe_log


def _lse(values: np.ndarray) -> float:
    with np.errstate(divide="ignore", invalid="ignore"):
        return float(logsumexp(values))


def log_z_f(f: FactorTable, m_vf: np.ndarray) -> float:
    """log sum_x f(x) prod_i m_vf(x_i); m_vf need not be normalized."""
    classes = f.classes
    return _lse(classes.log_weight + counts_dot_log(classes.counts, safe_log(m_vf)))


def log_z_v(m_fv: np.ndarray, l: int, h: FieldSpec | np.ndarray | None = None) -> float:
    """log sum_x h(x) m_fv(x)^l."""
    log_terms = power_log(safe_log(m_fv), l)
    if h is not None:
        log_terms = log_terms + safe_log(h.h if isinstance(h, FieldSpec) else h)
    return _lse(log_terms)


def log_z_fv(m_fv: np.ndarray, m_vf: np.ndarray) -> float:
    z = float(np.dot(m_fv, m_vf))
    if not z > 0:
        raise DegenerateMessageError(f"Z_fv = {z} must be positive")
    return float(np.log(z))


def regular_value(
    spec: RegularSpec, mp: MessagePair, h: FieldSpec | np.ndarray | None = None
) -> float:
    """(l/r) log Z_f + log Z_v - l log Z_fv."""
    l, r = spec.l, spec.r
    return (
        l / r * log_z_f(spec.factor, mp.m_vf)
        + log_z_v(mp.m_fv, l, h)
        - l * log_z_fv(mp.m_fv, mp.m_vf)
    )


def random_field_value(spec: RegularSpec, rf: RandomFieldSpec, mp: MessagePair) -> float:
    """(l/r) log Z_f + sum_h P_H(h) log Z_v(h) - l log Z_fv."""
    l, r = spec.l, spec.r
    field_term = sum(
        p * log_z_v(mp.m_fv, l, f) for f, p in zip(rf.fields, rf.probs, strict=True) if p > 0
    )
    return l / r * log_z_f(spec.factor, mp.m_vf) + field_term - l * log_z_fv(mp.m_fv, mp.m_vf)


def fixed_type_value(spec: RegularSpec, nu: np.ndarray, mp: MessagePair) -> float:
    """l ((1/r) log Z_f + sum_x nu(x) log m_fv(x) - log Z_fv) + H(nu)."""
    nu = np.asarray(nu, dtype=np.float64)
    support = nu > 0
    if np.any(mp.m_fv[support] <= 0):
        return float("-inf")
    cross = float(np.dot(nu[support], np.log(mp.m_fv[support])))
    l, r = spec.l, spec.r
    inner = log_z_f(spec.factor, mp.m_vf) / r + cross - log_z_fv(mp.m_fv, mp.m_vf)
    return l * inner + entropy(nu)


def irregular_value(spec: IrregularSpec, state: IrregularState) -> float:
    """(L'(1)/R'(1)) sum_j R_j log Z_f(j) + sum_i L_i log Z_v(i) - L'(1) log Z_fv."""
    m_vf, m_fv = state.messages.m_vf, state.messages.m_fv
    factor_term = sum(rj * log_z_f(spec.factors[j], m_vf) for j, rj in spec.R.items())
    var_term = sum(li * log_z_v(m_fv, i) for i, li in spec.L.items())
    return (
        spec.l_prime / spec.r_prime * factor_term
        + var_term
        - spec.l_prime * log_z_fv(m_fv, m_vf)
    )


def poisson_value(spec: PoissonSpec, state: PoissonState) -> float:
    """alpha log Z_f + log sum_x exp(e m_fv(x)) - e sum_x m_vf(x) m_fv(x)."""
    m_vf, m_fv = state.messages.m_vf, state.messages.m_fv
    return (
        spec.alpha * log_z_f(spec.factor, m_vf)
        + _lse(state.e * m_fv)
        - state.coupling
    )
