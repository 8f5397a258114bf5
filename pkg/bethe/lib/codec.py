"""Factor table text format.

Header line `arity q`, then one line per nonzero entry: comma-separated symbol indices,
whitespace, value. Lines starting with `#` are ignored.
"""

import numpy as np


def encode_factor(values: np.ndarray) -> str:
    q, arity = values.shape[0], values.ndim
    lines = [f"{arity} {q}"]
    for index in zip(*np.nonzero(values), strict=True):
        symbols = ",".join(str(int(s)) for s in index)
        lines.append(f"{symbols} {float(values[index])!r}")
    return "\n".join(lines) + "\n"


def decode_factor(text: str) -> tuple[int, int, dict[tuple[int, ...], float]]:
    lines = (ln.strip() for ln in text.splitlines())
    rows = [ln for ln in lines if ln and not ln.startswith("#")]
    if not rows:
        raise ValueError("Invalid factor table: empty")
    try:
        arity, q = (int(tok) for tok in rows[0].split())
    except ValueError as exc:
        raise ValueError(f"Invalid factor table header: {rows[0]!r}") from exc
    entries: dict[tuple[int, ...], float] = {}
    for row in rows[1:]:
        try:
            symbols, value = row.split()
            key = tuple(int(s) for s in symbols.split(","))
            entries[key] = float(value)
        except ValueError as exc:
            raise ValueError(f"Invalid factor table entry: {row!r}") from exc
    return arity, q, entries


__all__ = ["decode_factor", "encode_factor"]
