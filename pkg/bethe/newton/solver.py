import logging

import numpy as np
from scipy.linalg import solve

from bethe.core.errors import InfeasibleError, SpecError
from bethe.core.models import (
    DualPotential,
    NewtonOptions,
    NewtonReport,
    NewtonResult,
    RegularSpec,
)
from bethe.lib.logspace import is_distribution
from bethe.newton.dual import dual_value, moments, reduce_face

logger = logging.getLogger(__name__)

EPS = np.finfo(np.float64).eps


def minimize_dual(
    log_weight: np.ndarray,
    features: np.ndarray,
    target: np.ndarray,
    opts: NewtonOptions | None = None,
) -> tuple[np.ndarray, float, np.ndarray, NewtonReport]:
    """Damped Newton with Armijo backtracking on D(theta) = log Z(theta) - theta . target.

    Returns theta, the minimum value, class probabilities and the report. Accepted steps
    never increase D beyond floating-point slack.
    """
    opts = opts or NewtonOptions()
    dim = features.shape[1]
    theta = np.zeros(dim)
    history: list[float] = []
    grad_norm = float("inf")
    converged = False
    p = np.empty(0)
    iterations = 0
    for iterations in range(1, opts.max_iters + 1):
        log_z, p, mean, cov = moments(log_weight, features, theta)
        value = log_z - float(theta @ target)
        history.append(value)
        grad = mean - target
        grad_norm = float(np.max(np.abs(grad))) if dim else 0.0
        if grad_norm <= opts.grad_tol:
            converged = True
            break
        direction = solve(cov + opts.ridge * np.eye(dim), -grad, assume_a="sym")
        slope = float(grad @ direction)
        slack = 4 * EPS * max(1.0, abs(value))
        step = 1.0
        while True:
            trial = theta + step * direction
            trial_value = dual_value(log_weight, features, target, trial)
            if trial_value <= value + opts.armijo * step * slope + slack:
                break
            step *= opts.backtrack
            if step < 1e-16:
                break
        if step < 1e-16:
            # no descent left at working precision
            converged = grad_norm <= np.sqrt(opts.grad_tol)
            logger.debug(f"Newton line search stalled at |grad|={grad_norm:.3e}")
            break
        theta = trial
    else:
        log_z, p, mean, _ = moments(log_weight, features, theta)
        history.append(log_z - float(theta @ target))
        grad_norm = float(np.max(np.abs(mean - target))) if dim else 0.0
        converged = grad_norm <= opts.grad_tol

    value = history[-1]
    return theta, value, p, NewtonReport(converged, iterations, grad_norm, history)


def maximize_mu_given_nu(
    spec: RegularSpec, nu: np.ndarray, newton_opts: NewtonOptions | None = None
) -> NewtonResult:
    """max over mu of H(mu) + sum mu log f subject to the marginal condition for nu.

    Boundary nu is handled by restricting the alphabet to supp(nu) and the classes to the
    minimal face carrying the marginals. Infeasible nu yields entropy_energy = -inf and a
    certificate direction instead of an exception.
    """
    newton_opts = newton_opts or NewtonOptions()
    f, r, q = spec.factor, spec.r, spec.q
    nu = np.asarray(nu, dtype=np.float64)
    if nu.shape != (q,) or not is_distribution(nu, atol=1e-12):
        raise SpecError(f"nu must be a distribution on {q} symbols, got {nu}")

    classes = f.classes
    support = np.flatnonzero(nu > 0)
    outside = np.setdiff1d(np.arange(q), support)
    inside = np.all(classes.counts[:, outside] == 0, axis=1)

    def infeasible(certificate: np.ndarray, why: str) -> NewtonResult:
        logger.debug(f"nu={nu} infeasible: {why}")
        report = NewtonReport(True, 0, 0.0, [], 0)
        return NewtonResult(nu, float("-inf"), None, None, classes, report, certificate)

    if not np.any(inside):
        certificate = np.zeros(q)
        certificate[support] = 1.0
        return infeasible(certificate, "no supported tuple lives on supp(nu)")

    features = classes.counts[inside][:, support].astype(np.float64)
    target = r * nu[support]
    # gauge: drop the last support symbol
    reduced = features[:, :-1]
    try:
        keep = reduce_face(reduced, target[:-1])
    except InfeasibleError as e:
        certificate = np.zeros(q)
        certificate[support[:-1]] = e.certificate
        return infeasible(certificate, str(e))

    log_weight = classes.log_weight[inside][keep]
    theta, value, p, report = minimize_dual(log_weight, reduced[keep], target[:-1], newton_opts)
    report.reduced_classes = int(np.sum(~keep))
    if not report.converged:
        logger.warning(f"Newton did not reach grad_tol at nu={nu}: |grad|={report.grad_norm:.3e}")

    tau = np.full(q, -np.inf)
    tau[support] = 0.0
    tau[support[:-1]] = theta
    mu = np.zeros(classes.size)
    mu[np.flatnonzero(inside)[keep]] = p
    return NewtonResult(nu, value, DualPotential(tau), mu, classes, report)


def mu_marginal(result: NewtonResult, r: int) -> np.ndarray:
    """(1/r) sum_i marginal_i(mu) from per-class probabilities."""
    if result.mu is None or result.classes is None:
        raise SpecError("infeasible result carries no mu")
    return result.mu @ result.classes.counts / r
