import numpy as np
import pytest

from bethe.bp.solvers import solve_regular
from bethe.core.errors import InconsistentTypeError, SpecError
from bethe.core.models import MessagePair, PoissonSpec, TypeAssignment
from bethe.energy.objectives import (
    annealed_regular_at,
    bethe_type_objective,
    fixed_point_residual,
    poisson_type_objective,
    reconstruct_type,
    type_marginal,
)
from bethe.ensemble import factors
from tests.conftest import LOG2


def _product(nu: np.ndarray, r: int) -> np.ndarray:
    mu = nu
    for _ in range(r - 1):
        mu = np.multiply.outer(mu, nu)
    return mu


# === TYPE OBJECTIVE ===
def test_type_marginal_product():
    nu = np.array([0.3, 0.7])
    assert type_marginal(_product(nu, 4)) == pytest.approx(nu)


def test_type_marginal_averages_positions():
    mu = np.array([[0.0, 1.0], [0.0, 0.0]])
    assert type_marginal(mu) == pytest.approx([0.5, 0.5])


def test_ones_product_type_gives_entropy(ones_spec):
    nu = np.array([0.3, 0.7])
    value = bethe_type_objective(ones_spec, TypeAssignment(nu, _product(nu, 6)))
    assert value == pytest.approx(0.610864, abs=1e-6)


def test_ones_uniform_type_gives_log_q(ones_spec):
    nu = np.array([0.5, 0.5])
    value = bethe_type_objective(ones_spec, TypeAssignment(nu, _product(nu, 6)))
    assert value == pytest.approx(LOG2)


def test_mass_off_support_is_minus_inf(parity_spec):
    nu = np.array([0.5, 0.5])
    value = bethe_type_objective(parity_spec, TypeAssignment(nu, _product(nu, 6)))
    assert value == float("-inf")


def test_inconsistent_type_raises(ones_spec):
    mu = _product(np.array([0.5, 0.5]), 6)
    with pytest.raises(InconsistentTypeError, match="marginals differ"):
        bethe_type_objective(ones_spec, TypeAssignment(np.array([0.3, 0.7]), mu))


def test_unnormalized_type_raises(ones_spec):
    mu = _product(np.array([0.5, 0.5]), 6)
    with pytest.raises(InconsistentTypeError, match="normalized"):
        bethe_type_objective(ones_spec, TypeAssignment(np.array([0.5, 0.6]), mu))


def test_shape_mismatch_raises(ones_spec):
    with pytest.raises(SpecError, match="do not match"):
        bethe_type_objective(ones_spec, TypeAssignment(np.array([0.5, 0.5]), np.ones((2, 2)) / 4))


# === RECONSTRUCTION ===
def test_reconstructed_type_reproduces_bp_value(parity_spec, fast_opts):
    """Types read off a fixed point give the same value as the message formula."""
    mp, report = solve_regular(parity_spec, fast_opts)
    ta = reconstruct_type(parity_spec, mp)
    assert ta.nu == pytest.approx([0.5, 0.5])
    assert int((ta.mu > 0).sum()) == 32
    assert bethe_type_objective(parity_spec, ta) == pytest.approx(report.objective, abs=1e-10)
    assert bethe_type_objective(parity_spec, ta) == pytest.approx(0.346574, abs=1e-6)


def test_annealed_regular_at_fixed_point(parity_spec):
    assert annealed_regular_at(MessagePair.uniform(2), parity_spec) == pytest.approx(0.5 * LOG2)
    assert fixed_point_residual(MessagePair.uniform(2), parity_spec) == pytest.approx(0.0)


def test_annealed_regular_at_rejects_non_fixed_point(coloring_spec):
    mp = MessagePair(np.array([0.8, 0.2]), np.array([0.2, 0.8]))
    with pytest.raises(SpecError, match="not a fixed point"):
        annealed_regular_at(mp, coloring_spec)


# === POISSON ===
def test_poisson_type_objective_uniform():
    spec = PoissonSpec(0.25, 2, factors.not_equal_factor())
    assert poisson_type_objective(spec, np.array([0.5, 0.5])) == pytest.approx(0.75 * LOG2)


def test_poisson_type_objective_pinned():
    spec = PoissonSpec(0.25, 2, factors.not_equal_factor())
    assert poisson_type_objective(spec, np.array([1.0, 0.0])) == float("-inf")
