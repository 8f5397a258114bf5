"""Population dynamics for the replica-symmetric saddle equations.

A population is an (S, q) array of normalized messages. Factor-side members are branch
marginals of f against r-1 randomly drawn variable-side members; variable-side members are
normalized products of l-1 randomly drawn factor-side members. Updates run in vectorized
blocks over a random permutation of victims, each block reading the population as left by
the previous one.
"""

import logging
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from bethe.core.errors import DegenerateMessageError, SpecError
from bethe.core.models import FactorTable, Population
from bethe.lib import combinatorics
from bethe.lib.logspace import safe_log

logger = logging.getLogger(__name__)

MAX_REDRAWS = 100


@dataclass(frozen=True, eq=False)
class Contractor:
    """Batched contractions of a factor table against per-slot messages."""

    f: FactorTable

    @cached_property
    def _successors(self) -> list[np.ndarray]:
        q, r = self.f.q, self.f.arity
        out = []
        for j in range(r):
            target = {tuple(c): i for i, c in enumerate(combinatorics.compositions(j + 1, q))}
            succ = np.empty((combinatorics.count_compositions(j, q), q), dtype=np.int64)
            for i, c in enumerate(combinatorics.compositions(j, q)):
                for y in range(q):
                    bumped = c.copy()
                    bumped[y] += 1
                    succ[i, y] = target[tuple(bumped)]
            out.append(succ)
        return out

    @cached_property
    def _full_values(self) -> np.ndarray:
        comps = combinatorics.compositions(self.f.arity, self.f.q)
        return np.array([self.f.values[combinatorics.representative(c)] for c in comps])

    @cached_property
    def _branch_values(self) -> np.ndarray:
        with np.errstate(under="ignore"):
            return np.exp(self.f.branch_classes.log_f_ext)

    def _count_law(self, msgs: np.ndarray) -> np.ndarray:
        """Distribution of the symbol-count vector of independent slots, shape (B, comps)."""
        batch, slots, _ = msgs.shape
        dp = np.ones((batch, 1))
        for j in range(slots):
            succ = self._successors[j]
            nxt = np.zeros((batch, combinatorics.count_compositions(j + 1, self.f.q)))
            for y in range(self.f.q):
                nxt[:, succ[:, y]] += dp * msgs[:, j, y][:, None]
            dp = nxt
        return dp

    def _dense_contract(self, g: np.ndarray, msgs: np.ndarray) -> np.ndarray:
        out = np.broadcast_to(g, (msgs.shape[0], *g.shape))
        for j in range(msgs.shape[1]):
            out = np.einsum("b...y,by->b...", out, msgs[:, j])
        return out

    def branch(self, msgs: np.ndarray, roots: np.ndarray) -> np.ndarray:
        """Unnormalized branch marginals, msgs (B, r-1, q), roots (B,) slot positions."""
        if self.f.perm_invariant:
            return self._count_law(msgs) @ self._branch_values
        out = np.empty((msgs.shape[0], self.f.q))
        for d in np.unique(roots):
            rows = roots == d
            g = np.moveaxis(self.f.values, int(d), 0)
            out[rows] = self._dense_contract(g, msgs[rows][:, ::-1])
        return out

    def full(self, msgs: np.ndarray) -> np.ndarray:
        """sum_x f(x) prod_i msgs[:, i, x_i], msgs (B, r, q)."""
        if self.f.perm_invariant:
            return self._count_law(msgs) @ self._full_values
        return self._dense_contract(self.f.values, msgs[:, ::-1])


def _normalize_rows(values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    totals = values.sum(axis=1)
    bad = ~(totals > 0) | ~np.isfinite(totals)
    safe = np.where(bad, 1.0, totals)
    return values / safe[:, None], bad


def _factor_side(
    contractor: Contractor, pop_p: np.ndarray, count: int, rng: np.random.Generator
) -> tuple[np.ndarray, int]:
    r = contractor.f.arity
    size = pop_p.shape[0]
    out = np.empty((count, contractor.f.q))
    pending = np.arange(count)
    redraws = 0
    for _ in range(MAX_REDRAWS):
        picks = rng.integers(size, size=(len(pending), r - 1))
        roots = rng.integers(r, size=len(pending))
        values, bad = _normalize_rows(contractor.branch(pop_p[picks], roots))
        out[pending[~bad]] = values[~bad]
        pending = pending[bad]
        if not len(pending):
            return out, redraws
        redraws += len(pending)
    raise DegenerateMessageError(f"{len(pending)} factor-side draws stayed all-zero")


def _variable_side(
    pop_phat: np.ndarray, count: int, l: int, rng: np.random.Generator
) -> tuple[np.ndarray, int]:
    size, q = pop_phat.shape
    out = np.empty((count, q))
    pending = np.arange(count)
    redraws = 0
    for _ in range(MAX_REDRAWS):
        picks = rng.integers(size, size=(len(pending), l - 1))
        log_prod = safe_log(pop_phat[picks]).sum(axis=1)
        top = np.max(log_prod, axis=1)
        bad = ~np.isfinite(top)
        with np.errstate(invalid="ignore"):
            values, _ = _normalize_rows(np.exp(log_prod - np.where(bad, 0.0, top)[:, None]))
        out[pending[~bad]] = values[~bad]
        pending = pending[bad]
        if not len(pending):
            return out, redraws
        redraws += len(pending)
    raise DegenerateMessageError(f"{len(pending)} variable-side draws stayed all-zero")


def de_step(
    pop_p: Population,
    pop_phat: Population,
    f: FactorTable,
    l: int,
    r: int,
    rng: np.random.Generator,
    blocks: int = 8,
    contractor: Contractor | None = None,
) -> tuple[Population, Population, int, float]:
    """One sweep over both populations.

    Returns the new populations, the number of redrawn degenerate members and the mean
    L-infinity change of the variable-side members.
    """
    if f.arity != r:
        raise SpecError(f"factor arity {f.arity} does not match r={r}")
    contractor = contractor or Contractor(f)
    p = pop_p.members.copy()
    phat = pop_phat.members.copy()
    before = p.copy()
    redraws = 0

    for victims in np.array_split(rng.permutation(phat.shape[0]), blocks):
        if len(victims):
            fresh, bad = _factor_side(contractor, p, len(victims), rng)
            phat[victims] = fresh
            redraws += bad
    for victims in np.array_split(rng.permutation(p.shape[0]), blocks):
        if len(victims):
            fresh, bad = _variable_side(phat, len(victims), l, rng)
            p[victims] = fresh
            redraws += bad

    drift = float(np.mean(np.max(np.abs(p - before), axis=1)))
    return Population(p), Population(phat), redraws, drift
