"""Closed-form weight-distribution growth rate of (l, r)-regular LDPC codes.

With omega' = 1 - 2 omega the stationary system in (h, y', z') is

    y' = z'^(r-1),   z' = tanh(h + (l-1) atanh y'),   omega' = tanh(h + l atanh y')

and the growth rate at normalized weight omega is

    G = (l/r) log((1 + z'^r)/2)
        + log(e^h ((1+y')/2)^l + e^-h ((1-y')/2)^l) - l log((1 + y'z')/2) - omega' h.

Eliminating h leaves omega' = tanh(atanh z' + atanh z'^(r-1)), monotone in z', so the
system is solved by a bracketing root find on z'.
"""

import logging

import numpy as np
from scipy.optimize import brentq

from bethe.core.errors import NumericalError, SpecError
from bethe.core.models import LdpcParams

logger = logging.getLogger(__name__)

EDGE = 1e-15


def _check(l: int, r: int, omega: float) -> None:
    if l < 1 or r < 2:
        raise SpecError(f"need l >= 1 and r >= 2, got l={l} r={r}")
    if not 0.0 < omega < 1.0:
        raise SpecError(f"omega must lie in (0, 1), got {omega}")


def ldpc_params(l: int, r: int, omega: float, tol: float = 1e-9) -> LdpcParams:
    """Stationary (h, y', z') at weight omega, with the largest residual of the system."""
    _check(l, r, omega)
    target = np.arctanh(1.0 - 2.0 * omega)

    def gap(z: float) -> float:
        return float(np.arctanh(z) + np.arctanh(z ** (r - 1)) - target)

    lo, hi = -1.0 + EDGE, 1.0 - EDGE
    if gap(lo) * gap(hi) > 0:
        raise NumericalError(f"no stationary point brackets omega={omega} for ({l},{r})")
    z = brentq(gap, lo, hi, xtol=1e-16, rtol=4 * np.finfo(float).eps, maxiter=500)
    y = z ** (r - 1)
    h = float(np.arctanh(z) - (l - 1) * np.arctanh(y))
    residual = max(
        abs(z - np.tanh(h + (l - 1) * np.arctanh(y))),
        abs((1.0 - 2.0 * omega) - np.tanh(h + l * np.arctanh(y))),
    )
    if residual > tol:
        raise NumericalError(f"LDPC fixed point residual {residual:.3e} exceeds {tol:.1e}")
    return LdpcParams(omega, h, float(y), float(z), float(residual))


def growth_from_params(l: int, r: int, params: LdpcParams) -> float:
    h, y, z = params.h, params.y, params.z
    with np.errstate(divide="ignore"):
        branch = np.logaddexp(
            h + l * np.log((1.0 + y) / 2.0), -h + l * np.log((1.0 - y) / 2.0)
        )
    return float(
        l / r * np.log((1.0 + z**r) / 2.0)
        + branch
        - l * np.log((1.0 + y * z) / 2.0)
        - params.omega_prime * h
    )


def ldpc_growth_rate_closed_form(l: int, r: int, omega: float, tol: float = 1e-9) -> float:
    return growth_from_params(l, r, ldpc_params(l, r, omega, tol))


def ldpc_growth_curve(
    l: int, r: int, grid: int = 201, tol: float = 1e-9
) -> list[tuple[LdpcParams, float]]:
    """Interior grid omega = 1/(grid+1), ..., grid/(grid+1)."""
    out = []
    for omega in np.arange(1, grid + 1) / (grid + 1):
        params = ldpc_params(l, r, float(omega), tol)
        out.append((params, growth_from_params(l, r, params)))
    logger.debug(f"LDPC ({l},{r}) curve: {len(out)} points")
    return out
