"""Counting helpers: compositions, log-factorials and configuration classes of dense tables."""

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

EXHAUSTIVE_SYMMETRY_LIMIT = 10**6


@lru_cache(maxsize=64)
def compositions(n: int, parts: int) -> np.ndarray:
    """All nonnegative integer vectors of length `parts` summing to `n`, lexicographic order."""
    if parts == 1:
        out = np.array([[n]], dtype=np.int64)
        out.setflags(write=False)
        return out
    rows = []
    for bars in itertools.combinations(range(n + parts - 1), parts - 1):
        edges = (-1, *bars, n + parts - 1)
        rows.append([edges[i + 1] - edges[i] - 1 for i in range(parts)])
    out = np.array(rows, dtype=np.int64)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=16)
def _log_factorials(n: int) -> np.ndarray:
    table = np.zeros(n + 1)
    if n > 0:
        table[1:] = np.cumsum(np.log(np.arange(1, n + 1, dtype=np.float64)))
    table.setflags(write=False)
    return table


def log_factorial_table(n: int) -> np.ndarray:
    """log k! for k = 0..n by cumulative sums of logs."""
    # round up so nearby sizes share one cached table
    size = max(64, 1 << int(np.ceil(np.log2(max(n, 1) + 1))))
    return _log_factorials(size)[: n + 1]


def log_multinomial(counts: np.ndarray) -> np.ndarray:
    """log of n!/prod(c!) along the last axis."""
    counts = np.asarray(counts, dtype=np.int64)
    total = counts.sum(axis=-1)
    table = log_factorial_table(int(total.max()) if total.size else 0)
    return table[total] - table[counts].sum(axis=-1)


def is_perm_invariant(values: np.ndarray, atol: float = 0.0) -> bool:
    """Exhaustive check under an adjacent swap and a cyclic shift, which generate S_r."""
    if values.ndim < 2:
        return True
    swapped = np.swapaxes(values, 0, 1)
    shifted = np.moveaxis(values, 0, -1)
    return bool(
        np.allclose(values, swapped, rtol=0.0, atol=atol)
        and np.allclose(values, shifted, rtol=0.0, atol=atol)
    )


def all_tuples(q: int, r: int) -> np.ndarray:
    """Every tuple of X^r in C order, shape (q^r, r)."""
    grids = np.indices((q,) * r).reshape(r, -1)
    return grids.T.copy()


def symbol_counts(tuples: np.ndarray, q: int) -> np.ndarray:
    return (tuples[:, :, None] == np.arange(q)).sum(axis=1)


def representative(counts: np.ndarray) -> tuple[int, ...]:
    return tuple(np.repeat(np.arange(len(counts)), counts).tolist())


@dataclass(frozen=True, eq=False)
class Classes:
    """Configuration classes of a factor table restricted to its support.

    Each class k stands for `exp(log_mult[k])` tuples sharing the count vector `counts[k]`
    and the factor value `exp(log_f[k])`.
    """

    counts: np.ndarray
    log_mult: np.ndarray
    log_f: np.ndarray

    @property
    def log_weight(self) -> np.ndarray:
        return self.log_mult + self.log_f

    @property
    def size(self) -> int:
        return len(self.log_f)

    def restrict(self, keep: np.ndarray, symbols: np.ndarray | None = None) -> "Classes":
        counts = self.counts[keep]
        if symbols is not None:
            counts = counts[:, symbols]
        return Classes(counts, self.log_mult[keep], self.log_f[keep])


@dataclass(frozen=True, eq=False)
class BranchClasses:
    """Compositions c of r-1 with log multinomial(r-1; c) and log f at c + e_x per symbol x."""

    counts: np.ndarray
    log_mult: np.ndarray
    log_f_ext: np.ndarray


def _log(values: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return np.log(values)


def composition_classes(values: np.ndarray) -> Classes:
    q, r = values.shape[0], values.ndim
    counts = compositions(r, q)
    f = np.array([values[representative(c)] for c in counts])
    keep = f > 0
    return Classes(counts[keep], log_multinomial(counts)[keep], _log(f[keep]))


def dense_classes(values: np.ndarray) -> Classes:
    q, r = values.shape[0], values.ndim
    tuples = all_tuples(q, r)
    flat = values.reshape(-1)
    keep = flat > 0
    return Classes(symbol_counts(tuples[keep], q), np.zeros(int(keep.sum())), _log(flat[keep]))


def branch_classes(values: np.ndarray) -> BranchClasses:
    q, r = values.shape[0], values.ndim
    counts = compositions(r - 1, q)
    ext = np.empty((len(counts), q))
    for k, c in enumerate(counts):
        for x in range(q):
            bumped = c.copy()
            bumped[x] += 1
            ext[k, x] = values[representative(bumped)]
    return BranchClasses(counts, log_multinomial(counts), _log(ext))


def count_compositions(n: int, parts: int) -> int:
    return comb(n + parts - 1, parts - 1)
