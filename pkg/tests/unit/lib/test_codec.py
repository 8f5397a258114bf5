"""Factor table text format tests."""

import numpy as np
import pytest

from bethe.lib.codec import decode_factor, encode_factor


def test_encode_not_equal():
    text = encode_factor(1.0 - np.eye(2))
    assert text == "2 2\n0,1 1.0\n1,0 1.0\n"


def test_encode_skips_zero_entries():
    values = np.zeros((3, 3, 3))
    values[0, 1, 2] = 0.5
    lines = encode_factor(values).splitlines()
    assert lines == ["3 3", "0,1,2 0.5"]


def test_decode_basic():
    arity, q, entries = decode_factor("2 2\n0,1 1\n1,0 1\n")
    assert (arity, q) == (2, 2)
    assert entries == {(0, 1): 1.0, (1, 0): 1.0}


def test_decode_ignores_comments_and_blanks():
    text = "# equality\n\n1 3\n0 1\n# middle\n2 1.5\n"
    arity, q, entries = decode_factor(text)
    assert (arity, q) == (1, 3)
    assert entries == {(0,): 1.0, (2,): 1.5}


def test_decode_empty():
    with pytest.raises(ValueError, match="Invalid factor table"):
        decode_factor("# nothing here\n")


def test_decode_bad_header():
    with pytest.raises(ValueError, match="header"):
        decode_factor("two 2\n0,1 1\n")


def test_decode_bad_entry():
    with pytest.raises(ValueError, match="entry"):
        decode_factor("2 2\n0,1\n")


def test_encode_keeps_full_precision():
    values = np.full((2, 2), 1.0 / 3.0)
    _, _, entries = decode_factor(encode_factor(values))
    assert entries[(1, 1)] == 1.0 / 3.0
