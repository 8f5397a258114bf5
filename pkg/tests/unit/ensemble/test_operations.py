from math import comb, log

import numpy as np
import pytest

from bethe.core.errors import BudgetExceededError, PreconditionError
from bethe.core.models import Alphabet, FactorTable, IrregularSpec, RegularSpec
from bethe.ensemble import factors
from bethe.ensemble.operations import (
    design_rate,
    has_constant_branch_sums,
    replicate_factor,
    require_constant_branch_sums,
)
from tests.conftest import LOG2


# === REPLICATION ===
def test_replicate_identity():
    table = factors.parity_check_factor(3)
    assert replicate_factor(table, 1) is table


def test_replicate_not_equal():
    table = replicate_factor(factors.not_equal_factor(), 2)
    assert table.q == 4
    assert int((table.values > 0).sum()) == 4
    assert table.alphabet.labels == ("00", "01", "10", "11")


def test_replicate_symbol_layout():
    """Symbol s = 2*x1 + x2 pairs (x1, x2); value multiplies per-replica values."""
    base = factors.build_factor_table(2, Alphabet(2), {(0, 1): 2.0, (1, 1): 3.0})
    table = replicate_factor(base, 2)
    # (x1, x2) = (0, 1) at slot 0 and (1, 1) at slot 1 -> f(0,1) * f(1,1)
    assert table.values[0b01, 0b11] == 6.0
    assert table.values[0b11, 0b01] == 0.0


def test_replicate_ones():
    table = replicate_factor(factors.ones_factor(3), 2)
    assert np.all(table.values == 1.0)


def test_replicate_support_is_power():
    for base in (factors.parity_check_factor(3), factors.binary_csp_factor(4, 1)):
        for n in (1, 2, 3):
            assert replicate_factor(base, n).support_size == pytest.approx(base.support_size**n)


def test_replicate_keeps_perm_invariance():
    assert replicate_factor(factors.parity_check_factor(3), 2).perm_invariant


def test_replicate_budget():
    with pytest.raises(BudgetExceededError):
        replicate_factor(factors.parity_check_factor(6), 3, cap=10**4)


# === DESIGN RATE ===
def test_design_rate_ones():
    for l, r in [(2, 2), (3, 6), (5, 3)]:
        assert design_rate(RegularSpec(l, r, factors.ones_factor(r))) == pytest.approx(LOG2)


def test_design_rate_parity():
    spec = RegularSpec(3, 6, factors.parity_check_factor(6))
    assert design_rate(spec) == pytest.approx(0.5 * LOG2, abs=1e-12)
    assert design_rate(spec) == pytest.approx(0.346574, abs=1e-6)


def test_design_rate_binary_csp():
    spec = RegularSpec(10, 20, factors.binary_csp_factor(20, 1))
    n_f = 2**20 - comb(20, 10)
    assert design_rate(spec) == pytest.approx(log(2) + 0.5 * log(n_f / 2**20))


def test_design_rate_irregular_parity():
    """L'(1) = 3 with degree-3 parity checks gives zero rate."""
    spec = IrregularSpec({2: 0.5, 4: 0.5}, {3: 1.0}, {3: factors.parity_check_factor(3)})
    assert design_rate(spec) == pytest.approx(0.0, abs=1e-12)


def test_design_rate_needs_constant_branch_sums():
    table = FactorTable(np.array([[1.0, 1.0], [1.0, 0.0]]), Alphabet(2))
    assert not has_constant_branch_sums(table)
    with pytest.raises(PreconditionError, match="not constant"):
        design_rate(RegularSpec(2, 2, table))


def test_require_constant_branch_sums_passes_for_named_factors():
    for table in (
        factors.not_equal_factor(),
        factors.equality_factor(4),
        factors.binary_csp_factor(8, 2),
    ):
        require_constant_branch_sums(table)
