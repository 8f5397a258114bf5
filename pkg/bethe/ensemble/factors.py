"""Factor table constructors and file I/O."""

import logging
from collections.abc import Mapping, Sequence
from pathlib import Path

import numpy as np

from bethe.core.errors import BudgetExceededError, FactorError
from bethe.core.models import Alphabet, FactorTable
from bethe.lib import codec, combinatorics

logger = logging.getLogger(__name__)

TABLE_CAP = 10**7


def check_table_size(q: int, arity: int, cap: int) -> None:
    size = float(q) ** arity
    if size > cap:
        raise BudgetExceededError(f"factor table q^r = {q}^{arity}", size, cap)


def _symbol(alphabet: Alphabet, symbol) -> int:
    if isinstance(symbol, str):
        return alphabet.index(symbol)
    index = int(symbol)
    if not 0 <= index < alphabet.size:
        raise FactorError(f"symbol index {index} outside alphabet of size {alphabet.size}")
    return index


def build_factor_table(
    arity: int,
    alphabet: Alphabet,
    entries: Mapping[Sequence, float],
    perm_invariant: bool | None = None,
    cap: int = TABLE_CAP,
) -> FactorTable:
    """Dense table from sparse entries; missing tuples are 0.

    Permutation invariance is checked exhaustively when q^r <= 10^6; above that the
    caller's declaration is taken as given.
    """
    if arity < 1:
        raise FactorError(f"arity must be >= 1, got {arity}")
    q = alphabet.size
    check_table_size(q, arity, cap)
    values = np.zeros((q,) * arity)
    for key, value in entries.items():
        key = tuple(key) if isinstance(key, tuple | list) else (key,)
        if len(key) != arity:
            raise FactorError(f"tuple {key} has length {len(key)}, factor arity is {arity}")
        if value < 0:
            raise FactorError(f"factor value for {key} is negative: {value}")
        values[tuple(_symbol(alphabet, s) for s in key)] = float(value)

    if q**arity <= combinatorics.EXHAUSTIVE_SYMMETRY_LIMIT:
        symmetric = combinatorics.is_perm_invariant(values)
        if perm_invariant and not symmetric:
            raise FactorError("factor declared permutation-invariant but is not")
        perm_invariant = symmetric
    return FactorTable(values, alphabet, bool(perm_invariant))


def _weight_grid(r: int) -> np.ndarray:
    """Hamming weight of every binary r-tuple, as an r-dimensional array."""
    weights = np.zeros((2,) * r, dtype=np.int16)
    for i in range(r):
        shape = [1] * r
        shape[i] = 2
        weights += np.arange(2, dtype=np.int16).reshape(shape)
    return weights


def binary_csp_factor(r: int, k: int) -> FactorTable:
    """f(x) = 0 iff r/2 - k < weight(x) < r/2 + k."""
    if r < 2 or r % 2:
        raise FactorError(f"binary CSP needs an even arity r >= 2, got {r}")
    if not 1 <= k <= r // 2:
        raise FactorError(f"k must satisfy 1 <= k <= r/2, got {k}")
    check_table_size(2, r, TABLE_CAP)
    w = _weight_grid(r)
    half = r // 2
    values = ((w <= half - k) | (w >= half + k)).astype(np.float64)
    return FactorTable(values, Alphabet.binary(), perm_invariant=True)


def parity_check_factor(r: int, alphabet: Alphabet | None = None) -> FactorTable:
    """f(x) = 1 iff the weight of x is even."""
    alphabet = alphabet or Alphabet.binary()
    if alphabet.size != 2:
        raise FactorError(f"parity check needs a binary alphabet, got size {alphabet.size}")
    if r < 1:
        raise FactorError(f"arity must be >= 1, got {r}")
    check_table_size(2, r, TABLE_CAP)
    values = (_weight_grid(r) % 2 == 0).astype(np.float64)
    return FactorTable(values, alphabet, perm_invariant=True)


def ones_factor(r: int, alphabet: Alphabet | None = None) -> FactorTable:
    alphabet = alphabet or Alphabet.binary()
    check_table_size(alphabet.size, r, TABLE_CAP)
    return FactorTable(np.ones((alphabet.size,) * r), alphabet, perm_invariant=True)


def equality_factor(r: int, alphabet: Alphabet | None = None) -> FactorTable:
    alphabet = alphabet or Alphabet.binary()
    check_table_size(alphabet.size, r, TABLE_CAP)
    values = np.zeros((alphabet.size,) * r)
    for x in range(alphabet.size):
        values[(x,) * r] = 1.0
    return FactorTable(values, alphabet, perm_invariant=True)


def not_equal_factor(alphabet: Alphabet | None = None) -> FactorTable:
    """Pairwise coloring constraint f(x, y) = [x != y]."""
    alphabet = alphabet or Alphabet.binary()
    values = 1.0 - np.eye(alphabet.size)
    return FactorTable(values, alphabet, perm_invariant=True)


def load_factor(path: Path) -> FactorTable:
    try:
        arity, q, entries = codec.decode_factor(path.read_text())
    except ValueError as e:
        raise FactorError(f"{path}: {e}") from e
    logger.debug(f"Loaded factor arity={arity} q={q} with {len(entries)} entries from {path}")
    return build_factor_table(arity, Alphabet(q), entries)


def save_factor(table: FactorTable, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(codec.encode_factor(table.values))
