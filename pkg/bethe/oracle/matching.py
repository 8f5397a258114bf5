"""E[Z] over the socket-matching ensemble by enumerating or sampling graphs."""

import logging
from collections.abc import Iterator
from math import factorial

import numpy as np

from bethe.core.errors import BudgetExceededError
from bethe.core.models import OracleMode, RegularSpec
from bethe.oracle.counting import ENUM_BUDGET, factor_count

logger = logging.getLogger(__name__)

ASSIGNMENT_LIMIT = 10**6
GRAPH_BATCH = 2048


def multiset_permutations(counts: list[int]) -> Iterator[tuple[int, ...]]:
    """Distinct orderings of a multiset given by per-symbol counts, lexicographic."""
    counts = list(counts)
    n = sum(counts)
    seq = [0] * n

    def extend(pos: int) -> Iterator[tuple[int, ...]]:
        if pos == n:
            yield tuple(seq)
            return
        for symbol, left in enumerate(counts):
            if left:
                counts[symbol] -= 1
                seq[pos] = symbol
                yield from extend(pos + 1)
                counts[symbol] += 1

    return extend(0)


def _assignments(q: int, n: int) -> np.ndarray:
    """All q^N assignments, shape (q^N, N)."""
    grids = np.indices((q,) * n).reshape(n, -1)
    return grids.T


def partition_functions(spec: RegularSpec, graphs: np.ndarray, n: int) -> np.ndarray:
    """Z for each graph; graphs[g, s] is the variable on factor socket s (factor s // r)."""
    f, r = spec.factor.values, spec.r
    assignments = _assignments(spec.q, n)
    out = np.empty(len(graphs))
    for start in range(0, len(graphs), GRAPH_BATCH):
        batch = graphs[start : start + GRAPH_BATCH]
        symbols = assignments[:, batch]
        symbols = symbols.reshape(*symbols.shape[:2], -1, r)
        weights = f[tuple(symbols[..., j] for j in range(r))]
        out[start : start + len(batch)] = weights.prod(axis=2).sum(axis=0)
    return out


def exhaustive_E_Z(
    n: int,
    spec: RegularSpec,
    mode: OracleMode = OracleMode.EXACT,
    samples: int = 10_000,
    seed: int = 0,
    budget: int = ENUM_BUDGET,
) -> float:
    """Average of Z over uniformly random socket matchings.

    Exact mode walks every distinct sequence of variables on the factor sockets; each one
    stands for (l!)^N equally likely matchings.
    """
    factor_count(n, spec)
    sockets = n * spec.l
    assignments = spec.q**n
    if assignments > ASSIGNMENT_LIMIT:
        raise BudgetExceededError("assignment enumeration", assignments, ASSIGNMENT_LIMIT)

    if mode == OracleMode.EXACT:
        permutations = factorial(sockets)
        if permutations > budget:
            raise BudgetExceededError("socket permutation enumeration", permutations, budget)
        graphs = np.array(list(multiset_permutations([spec.l] * n)), dtype=np.int64)
        logger.debug(f"N={n}: {len(graphs)} distinct socket sequences")
    else:
        rng = np.random.default_rng(seed)
        base = np.repeat(np.arange(n), spec.l)
        graphs = np.array([rng.permutation(base) for _ in range(samples)], dtype=np.int64)
    return float(np.mean(partition_functions(spec, graphs, n)))
