"""Local stability of the paramagnetic (uniform-message) fixed point."""

import logging
from fractions import Fraction
from math import comb

import numpy as np
from scipy.linalg import eig, eigvalsh, null_space

from bethe.core.errors import SpecError
from bethe.core.models import FactorTable, StabilityReport
from bethe.ensemble.operations import require_constant_branch_sums

logger = logging.getLogger(__name__)

MARGINAL_TOL = 1e-9
SYMMETRY_TOL = 1e-12


def linearized_operator(f: FactorTable, r: int | None = None) -> np.ndarray:
    """A[x, y] = -(sum over branches rooted at x of f times #{other slots equal to y}) / S_x.

    Per configuration class with counts c and total weight w this is
    -(sum_k w_k c_k c_k^T - diag(S)) / S_x.
    """
    if r is not None and r != f.arity:
        raise SpecError(f"factor arity {f.arity} does not match r={r}")
    require_constant_branch_sums(f)
    classes = f.classes
    w = np.exp(classes.log_weight - np.max(classes.log_weight))
    c = classes.counts.astype(np.float64)
    s = w @ c
    pairs = (c * w[:, None]).T @ c - np.diag(s)
    return -pairs / s[:, None]


def paramagnetic_stability(f: FactorTable, r: int | None = None) -> StabilityReport:
    """Spectrum of A; stable when every eigenvalue off the all-ones direction has |lambda| < 1."""
    a = linearized_operator(f, r)
    q = a.shape[0]
    trivial = -(f.arity - 1.0)
    ones_gap = float(np.max(np.abs(a @ np.ones(q) - trivial)))
    if ones_gap > 1e-10:
        logger.warning(f"all-ones vector is not an eigenvector (gap {ones_gap:.3e})")

    symmetric = bool(np.allclose(a, a.T, rtol=0.0, atol=SYMMETRY_TOL))
    # complement of the all-ones direction; A is block triangular in the basis [1, P]
    p = null_space(np.ones((1, q)))
    compressed = p.T @ a @ p
    if symmetric:
        eigenvalues = eigvalsh(a)
        nontrivial = eigvalsh((compressed + compressed.T) / 2.0)
    else:
        eigenvalues = eig(a, right=False)
        nontrivial = eig(compressed, right=False)
    top = float(np.max(np.abs(nontrivial))) if nontrivial.size else 0.0
    marginal = abs(top - 1.0) <= MARGINAL_TOL
    logger.debug(f"paramagnetic spectrum: trivial {trivial}, max nontrivial |lambda| {top:.9f}")
    return StabilityReport(
        matrix=a,
        eigenvalues=eigenvalues,
        trivial_eigenvalue=trivial,
        max_nontrivial_abs=top,
        stable=top < 1.0,
        marginal=marginal,
        symmetric=symmetric,
    )


def binary_csp_stability_fraction(r: int, k: int) -> Fraction:
    """C(r-1, r/2-k)(2k-1) / (2 sum_{i<r/2-k} C(r-1, i) + C(r-1, r/2-k)), exactly."""
    if r < 2 or r % 2:
        raise SpecError(f"r must be an even integer >= 2, got {r}")
    if not 1 <= k <= r // 2:
        raise SpecError(f"k must satisfy 1 <= k <= r/2, got {k}")
    edge = comb(r - 1, r // 2 - k)
    tail = sum(comb(r - 1, i) for i in range(r // 2 - k))
    return Fraction(edge * (2 * k - 1), 2 * tail + edge)


def binary_csp_stability_value(r: int, k: int) -> float:
    return float(binary_csp_stability_fraction(r, k))
