import numpy as np
import pytest

from bethe.core.errors import BudgetExceededError
from bethe.core.models import OracleMode
from bethe.oracle.counting import exact_annealed_finite
from bethe.oracle.matching import exhaustive_E_Z, multiset_permutations, partition_functions


def test_multiset_permutations_lexicographic():
    assert list(multiset_permutations([2, 1])) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_multiset_permutations_count():
    assert len(list(multiset_permutations([2, 2, 2]))) == 90


def test_partition_functions_coloring(coloring_spec):
    graphs = np.array([[0, 0, 1, 1], [0, 1, 1, 0]])
    # self-loops kill every coloring; a 2-cycle has two
    assert partition_functions(coloring_spec, graphs, 2).tolist() == [0.0, 2.0]


def test_coloring_expected_z(coloring_spec):
    assert exhaustive_E_Z(2, coloring_spec) == pytest.approx(4 / 3)


def test_ones_expected_z(ones_spec):
    assert exhaustive_E_Z(2, ones_spec) == pytest.approx(4.0)


def test_matches_type_sum(coloring_spec, parity_spec):
    """Graph enumeration and the type sum are two routes to the same E[Z]."""
    for spec, n in ((coloring_spec, 2), (coloring_spec, 4), (parity_spec, 2)):
        by_graphs = np.log(exhaustive_E_Z(n, spec)) / n
        assert by_graphs == pytest.approx(exact_annealed_finite(n, spec), abs=1e-12)


def test_sampled_mode_is_close(coloring_spec):
    value = exhaustive_E_Z(2, coloring_spec, OracleMode.SAMPLED, samples=4_000, seed=1)
    assert value == pytest.approx(4 / 3, abs=0.08)


def test_sampled_mode_is_seeded(coloring_spec):
    first = exhaustive_E_Z(4, coloring_spec, OracleMode.SAMPLED, samples=200, seed=3)
    again = exhaustive_E_Z(4, coloring_spec, OracleMode.SAMPLED, samples=200, seed=3)
    assert first == again


def test_assignment_budget(coloring_spec):
    with pytest.raises(BudgetExceededError, match="assignment enumeration"):
        exhaustive_E_Z(22, coloring_spec, OracleMode.SAMPLED, samples=2)


def test_permutation_budget(parity_spec):
    with pytest.raises(BudgetExceededError, match="socket permutation"):
        exhaustive_E_Z(4, parity_spec)
