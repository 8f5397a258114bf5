import logging
from functools import reduce

import numpy as np

from bethe.core.errors import PreconditionError
from bethe.core.models import Alphabet, FactorTable, IrregularSpec, RegularSpec
from bethe.ensemble.factors import TABLE_CAP, check_table_size

logger = logging.getLogger(__name__)


def has_constant_branch_sums(f: FactorTable, rtol: float = 1e-12) -> bool:
    s = f.branch_sums
    return bool(np.allclose(s, s[0], rtol=rtol, atol=0.0))


def require_constant_branch_sums(f: FactorTable) -> None:
    if not has_constant_branch_sums(f):
        raise PreconditionError(
            f"branch sums S_x are not constant ({f.branch_sums}); no uniform fixed point"
        )


def _replicated_alphabet(alphabet: Alphabet, n: int) -> Alphabet:
    sep = "" if all(len(lb) == 1 for lb in alphabet.labels) else "|"
    labels = [""]
    for _ in range(n):
        labels = [
            prefix + (sep if prefix else "") + lb for prefix in labels for lb in alphabet.labels
        ]
    return Alphabet(alphabet.size**n, tuple(labels))


def replicate_factor(f: FactorTable, n: int, cap: int = TABLE_CAP) -> FactorTable:
    """Factor on X^n whose value is the product of n per-replica values.

    Replicated symbol s has base-q digits (x^(1), ..., x^(n)), first replica most significant.
    """
    if n < 1:
        raise ValueError(f"replica count must be >= 1, got {n}")
    if n == 1:
        return f
    q, r = f.q, f.arity
    check_table_size(q, n * r, cap)
    product = reduce(np.multiply.outer, [f.values] * n)
    order = [t * r + j for j in range(r) for t in range(n)]
    values = product.transpose(order).reshape((q**n,) * r)
    logger.debug(f"Replicated factor q={q} r={r} n={n} -> {values.size} entries")
    return FactorTable(values, _replicated_alphabet(f.alphabet, n), f.perm_invariant)


def design_rate(spec: RegularSpec | IrregularSpec) -> float:
    """log q + (l/r) log(N_f / q^r), the uniform-point exponent, in nats."""
    if isinstance(spec, IrregularSpec):
        total = 0.0
        for j, rj in spec.R.items():
            f = spec.factors[j]
            require_constant_branch_sums(f)
            total += rj * (np.log(f.support_size) - j * np.log(f.q))
        return float(np.log(spec.q) + spec.l_prime / spec.r_prime * total)
    f = spec.factor
    require_constant_branch_sums(f)
    return float(np.log(f.q) + spec.l / spec.r * (np.log(f.support_size) - spec.r * np.log(f.q)))
