"""Single-edge message updates. Every returned message is normalized."""

import numpy as np
from scipy.special import logsumexp

from bethe.core.errors import DegenerateMessageError, FactorError
from bethe.core.models import FactorTable, FieldSpec, RandomFieldSpec
from bethe.lib.logspace import counts_dot_log, normalize, normalize_log, power_log, safe_log


def _lse(values: np.ndarray, axis: int) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        return logsumexp(values, axis=axis)


def log_branch_sums_single(f: FactorTable, m_vf: np.ndarray) -> np.ndarray:
    """Branch sums of a permutation-invariant factor: r times one branch, over compositions."""
    bc = f.branch_classes
    base = bc.log_mult + counts_dot_log(bc.counts, safe_log(m_vf))
    return np.log(f.arity) + _lse(base[:, None] + bc.log_f_ext, axis=0)


def log_branch_sums_full(f: FactorTable, m_vf: np.ndarray) -> np.ndarray:
    """Branch sums by contracting every position but one against m_vf."""
    scale = float(np.max(m_vf))
    if not scale > 0:
        raise DegenerateMessageError("variable-to-factor message is all-zero")
    m = np.asarray(m_vf, dtype=np.float64) / scale
    r = f.arity
    total = np.zeros(f.q)
    for i in range(r):
        g = np.moveaxis(f.values, i, 0)
        for _ in range(r - 1):
            g = g @ m
        total += g
    return safe_log(total) + (r - 1) * np.log(scale)


def log_branch_sums(
    f: FactorTable, m_vf: np.ndarray, single_branch: bool | None = None
) -> np.ndarray:
    """log of sum_i sum_{x: x_i = x} f(x) prod_{j != i} m_vf(x_j), unnormalized."""
    if single_branch is None:
        single_branch = f.perm_invariant
    if single_branch and not f.perm_invariant:
        raise FactorError("single-branch update needs a permutation-invariant factor")
    if single_branch:
        return log_branch_sums_single(f, m_vf)
    return log_branch_sums_full(f, m_vf)


def update_f_to_v(
    f: FactorTable, m_vf: np.ndarray, single_branch: bool | None = None
) -> np.ndarray:
    return normalize_log(log_branch_sums(f, m_vf, single_branch), "factor-to-variable message")


def update_v_to_f_regular(m_fv: np.ndarray, l: int) -> np.ndarray:
    """m_vf(x) proportional to m_fv(x)^(l-1)."""
    return normalize_log(power_log(safe_log(m_fv), l - 1), "variable-to-factor message")


def update_v_to_f_fixed_type(nu: np.ndarray, m_fv: np.ndarray) -> np.ndarray:
    """m_vf(x) proportional to nu(x) / m_fv(x)."""
    nu = np.asarray(nu, dtype=np.float64)
    support = nu > 0
    if np.any(support & (m_fv <= 0)):
        raise DegenerateMessageError(
            f"factor-to-variable message vanishes where nu > 0 (nu={nu}, m_fv={m_fv})"
        )
    ratio = np.zeros_like(nu)
    ratio[support] = nu[support] / m_fv[support]
    return normalize(ratio, "variable-to-factor message")


def _field(h: FieldSpec | np.ndarray) -> np.ndarray:
    return h.h if isinstance(h, FieldSpec) else np.asarray(h, dtype=np.float64)


def update_v_to_f_field(h: FieldSpec | np.ndarray, m_fv: np.ndarray, l: int) -> np.ndarray:
    """m_vf(x) proportional to h(x) m_fv(x)^(l-1)."""
    log_terms = safe_log(_field(h)) + power_log(safe_log(m_fv), l - 1)
    return normalize_log(log_terms, "variable-to-factor message")


def log_z_v_fields(rf: RandomFieldSpec, m_fv: np.ndarray, l: int) -> np.ndarray:
    """log Z_v(h) = log sum_x h(x) m_fv(x)^l for every field h."""
    log_m = power_log(safe_log(m_fv), l)
    return np.array([_lse(safe_log(f.h) + log_m, axis=0) for f in rf.fields])


def update_v_to_f_random_field(rf: RandomFieldSpec, m_fv: np.ndarray, l: int) -> np.ndarray:
    """m_vf(x) proportional to sum_h P_H(h) h(x) m_fv(x)^(l-1) / Z_v(h)."""
    log_zv = log_z_v_fields(rf, m_fv, l)
    log_m = power_log(safe_log(m_fv), l - 1)
    rows = np.array(
        [
            safe_log(p) + safe_log(f.h) + log_m - zv
            for f, p, zv in zip(rf.fields, rf.probs, log_zv, strict=True)
        ]
    )
    return normalize_log(_lse(rows, axis=0), "variable-to-factor message")


def update_v_to_f_irregular(m_fv: np.ndarray, l_w: dict[int, float]) -> np.ndarray:
    """m_vf(x) proportional to sum_i i l(i) m_fv(x)^(i-1)."""
    log_m = safe_log(m_fv)
    rows = np.array([np.log(i * w) + power_log(log_m, i - 1) for i, w in l_w.items() if w > 0])
    return normalize_log(_lse(rows, axis=0), "variable-to-factor message")


def update_f_to_v_irregular(
    factors: dict[int, FactorTable], r_w: dict[int, float], m_vf: np.ndarray
) -> np.ndarray:
    """m_fv(x) proportional to sum_j r(j) (branch sums of f_j)(x)."""
    rows = np.array(
        [np.log(w) + log_branch_sums(factors[j], m_vf) for j, w in r_w.items() if w > 0]
    )
    return normalize_log(_lse(rows, axis=0), "factor-to-variable message")


def update_v_to_f_poisson(m_fv: np.ndarray, e: float) -> np.ndarray:
    """m_vf(x) proportional to exp(e m_fv(x))."""
    return normalize_log(e * np.asarray(m_fv, dtype=np.float64), "variable-to-factor message")
