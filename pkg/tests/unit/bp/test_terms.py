import numpy as np
import pytest

from bethe.bp import terms
from bethe.core.errors import DegenerateMessageError
from bethe.core.models import FieldSpec, MessagePair, RandomFieldSpec
from bethe.ensemble import factors
from tests.conftest import LOG2

UNIFORM = np.array([0.5, 0.5])


# === PARTITION TERMS ===
def test_log_z_f_unnormalized_messages():
    assert terms.log_z_f(factors.ones_factor(2), np.ones(2)) == pytest.approx(np.log(4.0))


def test_log_z_f_not_equal():
    value = terms.log_z_f(factors.not_equal_factor(), np.array([0.8, 0.2]))
    assert value == pytest.approx(np.log(0.32))


def test_log_z_v_with_and_without_field():
    assert terms.log_z_v(UNIFORM, 3) == pytest.approx(np.log(0.25))
    h = FieldSpec(np.array([2.0, 1.0]))
    assert terms.log_z_v(UNIFORM, 3, h) == pytest.approx(np.log(0.375))
    assert terms.log_z_v(UNIFORM, 3, np.array([2.0, 1.0])) == pytest.approx(np.log(0.375))


def test_log_z_fv_orthogonal_messages():
    with pytest.raises(DegenerateMessageError, match="must be positive"):
        terms.log_z_fv(np.array([1.0, 0.0]), np.array([0.0, 1.0]))


# === OBJECTIVES ===
def test_regular_value_ones(ones_spec):
    assert terms.regular_value(ones_spec, MessagePair.uniform(2)) == pytest.approx(LOG2)


def test_single_unit_field_is_regular(ones_spec):
    rf = RandomFieldSpec((FieldSpec(np.ones(2)),), np.array([1.0]))
    mp = MessagePair.uniform(2)
    assert terms.random_field_value(ones_spec, rf, mp) == pytest.approx(
        terms.regular_value(ones_spec, mp)
    )


def test_fixed_type_value_uniform(ones_spec):
    value = terms.fixed_type_value(ones_spec, UNIFORM, MessagePair.uniform(2))
    assert value == pytest.approx(LOG2)


def test_fixed_type_value_off_support(ones_spec):
    """A type that puts mass where m_fv vanishes has value -inf."""
    mp = MessagePair(UNIFORM.copy(), np.array([0.0, 1.0]))
    assert terms.fixed_type_value(ones_spec, np.array([1.0, 0.0]), mp) == float("-inf")
