import numpy as np
import pytest

from bethe.bp.updates import (
    log_branch_sums,
    update_f_to_v,
    update_f_to_v_irregular,
    update_v_to_f_field,
    update_v_to_f_fixed_type,
    update_v_to_f_irregular,
    update_v_to_f_poisson,
    update_v_to_f_random_field,
    update_v_to_f_regular,
)
from bethe.core.errors import DegenerateMessageError, FactorError
from bethe.core.models import Alphabet, FactorTable, FieldSpec, RandomFieldSpec
from bethe.ensemble import factors

UNIFORM = np.array([0.5, 0.5])


# === FACTOR TO VARIABLE ===
def test_f_to_v_ones_uniform():
    out = update_f_to_v(factors.ones_factor(5), UNIFORM)
    assert out == pytest.approx(UNIFORM)


def test_f_to_v_binary_csp_paramagnetic():
    out = update_f_to_v(factors.binary_csp_factor(20, 1), UNIFORM)
    assert out == pytest.approx(UNIFORM, abs=1e-14)


def test_f_to_v_not_equal_swaps():
    out = update_f_to_v(factors.not_equal_factor(), np.array([0.8, 0.2]))
    assert out == pytest.approx([0.2, 0.8])


def test_single_and_full_branch_agree():
    """Perm-invariant factors: both contraction paths give the same branch sums."""
    rng = np.random.default_rng(11)
    tables = [
        factors.parity_check_factor(r) for r in range(2, 7)
    ] + [
        factors.binary_csp_factor(6, 2),
        factors.not_equal_factor(Alphabet(3)),
        factors.equality_factor(4, Alphabet(3)),
    ]
    for table in tables:
        m = rng.dirichlet(np.ones(table.q))
        single = update_f_to_v(table, m, single_branch=True)
        full = update_f_to_v(table, m, single_branch=False)
        assert np.max(np.abs(single - full)) <= 1e-14


def test_single_branch_needs_perm_invariance():
    table = FactorTable(np.array([[0.0, 1.0], [0.0, 0.0]]), Alphabet(2))
    with pytest.raises(FactorError, match="permutation-invariant"):
        log_branch_sums(table, UNIFORM, single_branch=True)


def test_f_to_v_asymmetric_sums_both_positions():
    table = FactorTable(np.array([[0.0, 1.0], [0.0, 0.0]]), Alphabet(2))
    # position 0 contributes m(1) at x=0, position 1 contributes m(0) at x=1
    out = update_f_to_v(table, np.array([0.25, 0.75]))
    assert out == pytest.approx([0.75, 0.25])


def test_f_to_v_degenerate():
    with pytest.raises(DegenerateMessageError):
        update_f_to_v(factors.equality_factor(3), np.array([0.0, 0.0]))


# === VARIABLE TO FACTOR ===
def test_v_to_f_regular_l2_identity():
    m = np.array([0.3, 0.7])
    assert update_v_to_f_regular(m, 2) == pytest.approx(m)


def test_v_to_f_regular_power():
    out = update_v_to_f_regular(np.array([0.9, 0.1]), 3)
    assert out == pytest.approx([0.81 / 0.82, 0.01 / 0.82])


def test_v_to_f_regular_keeps_zeros():
    assert update_v_to_f_regular(np.array([1.0, 0.0]), 4).tolist() == [1.0, 0.0]


def test_v_to_f_fixed_type():
    assert update_v_to_f_fixed_type(np.array([0.3, 0.7]), UNIFORM) == pytest.approx([0.3, 0.7])
    out = update_v_to_f_fixed_type(np.array([0.5, 0.5]), np.array([0.25, 0.75]))
    assert out == pytest.approx([0.75, 0.25])


def test_v_to_f_fixed_type_support_violation():
    with pytest.raises(DegenerateMessageError, match="vanishes"):
        update_v_to_f_fixed_type(np.array([0.5, 0.5]), np.array([1.0, 0.0]))


def test_v_to_f_fixed_type_boundary_nu():
    out = update_v_to_f_fixed_type(np.array([1.0, 0.0]), np.array([1.0, 0.0]))
    assert out.tolist() == [1.0, 0.0]


def test_v_to_f_field():
    m = np.array([0.2, 0.8])
    assert update_v_to_f_field(FieldSpec.ones(2), m, 3) == pytest.approx(
        update_v_to_f_regular(m, 3)
    )
    assert update_v_to_f_field(FieldSpec(np.array([1.0, 0.0])), m, 3).tolist() == [1.0, 0.0]
    assert update_v_to_f_field(FieldSpec(np.array([2.0, 1.0])), UNIFORM, 2) == pytest.approx(
        [2 / 3, 1 / 3]
    )


def test_v_to_f_random_field_single_field():
    """A one-point field law reduces to the fixed-field update."""
    h = FieldSpec(np.array([3.0, 1.0]))
    m = np.array([0.4, 0.6])
    rf = RandomFieldSpec((h,), np.array([1.0]))
    assert update_v_to_f_random_field(rf, m, 3) == pytest.approx(update_v_to_f_field(h, m, 3))


def test_v_to_f_random_field_mixture():
    h0, h1 = FieldSpec(np.array([1.0, 0.0])), FieldSpec(np.array([0.0, 1.0]))
    rf = RandomFieldSpec((h0, h1), np.array([0.25, 0.75]))
    out = update_v_to_f_random_field(rf, np.array([0.3, 0.7]), 2)
    # each pinned field contributes h(x) m(x) / (h . m^l) = 1/m(x) on its symbol
    expected = np.array([0.25 / 0.3, 0.75 / 0.7])
    assert out == pytest.approx(expected / expected.sum())


def test_v_to_f_irregular_single_degree():
    m = np.array([0.35, 0.65])
    assert update_v_to_f_irregular(m, {4: 1.0}) == pytest.approx(update_v_to_f_regular(m, 4))


def test_f_to_v_irregular_single_degree():
    m = np.array([0.35, 0.65])
    parity = factors.parity_check_factor(3)
    out = update_f_to_v_irregular({3: parity}, {3: 1.0}, m)
    assert out == pytest.approx(update_f_to_v(parity, m))


def test_v_to_f_poisson():
    out = update_v_to_f_poisson(np.array([0.0, np.log(3.0)]), 1.0)
    assert out == pytest.approx([0.25, 0.75])
