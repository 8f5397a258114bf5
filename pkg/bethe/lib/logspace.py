"""Log-domain helpers for probability vectors on a finite alphabet."""

import numpy as np
from scipy.special import entr

from bethe.core.errors import DegenerateMessageError


def safe_log(values: np.ndarray) -> np.ndarray:
    """Elementwise log with log 0 = -inf and no warnings."""
    with np.errstate(divide="ignore"):
        return np.log(values)


def normalize(values: np.ndarray, what: str = "message") -> np.ndarray:
    total = float(np.sum(values))
    if not np.isfinite(total) or total <= 0.0:
        raise DegenerateMessageError(f"{what} is all-zero or non-finite (sum={total})")
    return np.asarray(values, dtype=np.float64) / total


def normalize_log(log_values: np.ndarray, what: str = "message") -> np.ndarray:
    """Exponentiate after max-subtraction, then normalize along the last axis."""
    log_values = np.asarray(log_values, dtype=np.float64)
    top = np.max(log_values, axis=-1, keepdims=True)
    if np.any(~np.isfinite(top)):
        raise DegenerateMessageError(f"{what} is all-zero in log domain")
    weights = np.exp(log_values - top)
    return weights / weights.sum(axis=-1, keepdims=True)


def power_log(log_values: np.ndarray, exponent: float | np.ndarray) -> np.ndarray:
    """exponent * log_values with 0 * (-inf) taken as 0."""
    exponent = np.asarray(exponent, dtype=np.float64)
    with np.errstate(invalid="ignore"):
        out = exponent * log_values
    return np.where(exponent == 0, 0.0, out)


def counts_dot_log(counts: np.ndarray, log_m: np.ndarray) -> np.ndarray:
    """sum_y counts[..., y] * log_m[..., y] with zero counts contributing 0."""
    return power_log(log_m, counts).sum(axis=-1)


def entropy(p: np.ndarray) -> float:
    """Shannon entropy in nats; 0 log 0 = 0."""
    return float(entr(np.asarray(p, dtype=np.float64)).sum())


def is_distribution(p: np.ndarray, atol: float = 1e-10) -> bool:
    p = np.asarray(p, dtype=np.float64)
    return bool(np.all(p >= 0.0) and abs(p.sum() - 1.0) <= atol)

