"""Convex dual of the fixed-type inner problem.

For potentials theta on the class features F (count vectors, optionally extended by
linear mu-constraint features), mu_theta(k) is proportional to w_k exp(F_k . theta) and

    D(theta) = log sum_k w_k exp(F_k . theta) - theta . target

is convex; its minimum equals max_mu { H(mu) + sum mu log f } under E_mu[F] = target.
"""

import numpy as np
from scipy.optimize import linprog
from scipy.special import logsumexp

from bethe.core.errors import InfeasibleError
from bethe.core.models import FactorTable

LP_TOL = 1e-9


def moments(
    log_weight: np.ndarray, features: np.ndarray, theta: np.ndarray
) -> tuple[float, np.ndarray, np.ndarray, np.ndarray]:
    """log partition, class probabilities, feature mean and feature covariance."""
    logits = log_weight + features @ theta
    log_z = float(logsumexp(logits))
    p = np.exp(logits - log_z)
    mean = p @ features
    centered = features - mean
    cov = (centered * p[:, None]).T @ centered
    return log_z, p, mean, cov


def dual_value(
    log_weight: np.ndarray, features: np.ndarray, target: np.ndarray, theta: np.ndarray
) -> float:
    return float(logsumexp(log_weight + features @ theta)) - float(theta @ target)


def dual_objective(
    tau: np.ndarray, nu: np.ndarray, f: FactorTable, r: int | None = None
) -> tuple[float, np.ndarray, np.ndarray]:
    """Value, gradient and Hessian in the full per-symbol potential tau on X.

    value = log sum_x f(x) exp(sum_i tau(x_i)) - r sum_z tau(z) nu(z)
    gradient = E_mu_tau[counts] - r nu, Hessian = Cov_mu_tau(counts).
    """
    r = f.arity if r is None else r
    classes = f.classes
    tau = np.asarray(tau, dtype=np.float64)
    nu = np.asarray(nu, dtype=np.float64)
    counts = classes.counts.astype(np.float64)
    log_z, _, mean, cov = moments(classes.log_weight, counts, tau)
    return log_z - r * float(tau @ nu), mean - r * nu, cov


def reduce_face(features: np.ndarray, target: np.ndarray) -> np.ndarray:
    """Classes that can carry mass under E[F] = target, as a boolean mask.

    Raises InfeasibleError when target lies outside the convex hull of the class features;
    the certificate d satisfies d . target > max_k d . F_k.
    """
    n_classes, dim = features.shape
    keep = np.ones(n_classes, dtype=bool)
    if dim == 0:
        return keep
    scale = max(1.0, float(np.max(np.abs(features))), float(np.max(np.abs(target))))
    tol = LP_TOL * scale

    # separation: maximize d . target - t  s.t.  F_k . d <= t, |d| <= 1
    c = np.concatenate([-target, [1.0]])
    a_ub = np.hstack([features, -np.ones((n_classes, 1))])
    bounds = [(-1.0, 1.0)] * dim + [(None, None)]
    res = linprog(c, A_ub=a_ub, b_ub=np.zeros(n_classes), bounds=bounds, method="highs")
    if res.status == 0 and -res.fun > tol:
        raise InfeasibleError(
            f"target {target} lies outside the hull of supported types (gap {-res.fun:.3e})",
            certificate=res.x[:dim],
        )

    # minimal face: maximize sum of slacks s_k = t - F_k . d subject to d . target = t
    while True:
        idx = np.flatnonzero(keep)
        m = len(idx)
        c = np.concatenate([np.zeros(dim + 1), -np.ones(m)])
        a_eq = np.zeros((m + 1, dim + 1 + m))
        a_eq[:m, :dim] = features[idx]
        a_eq[:m, dim] = -1.0
        a_eq[:m, dim + 1 :] = np.eye(m)
        a_eq[m, :dim] = target
        a_eq[m, dim] = -1.0
        bounds = [(-1.0, 1.0)] * dim + [(None, None)] + [(0.0, 1.0)] * m
        res = linprog(c, A_eq=a_eq, b_eq=np.zeros(m + 1), bounds=bounds, method="highs")
        if res.status != 0 or -res.fun <= tol:
            return keep
        slack = res.x[dim + 1 :]
        drop = idx[slack > tol]
        if len(drop) == 0:
            return keep
        keep[drop] = False
