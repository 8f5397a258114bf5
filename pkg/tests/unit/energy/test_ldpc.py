import numpy as np
import pytest

from bethe.bp.solvers import solve_fixed_type
from bethe.core.errors import SpecError
from bethe.energy.ldpc import (
    growth_from_params,
    ldpc_growth_curve,
    ldpc_growth_rate_closed_form,
    ldpc_params,
)
from bethe.energy.objectives import growth_rate_fixed_type
from tests.conftest import LOG2


def test_half_weight_is_design_rate():
    assert ldpc_growth_rate_closed_form(3, 6, 0.5) == pytest.approx(0.5 * LOG2, abs=1e-12)


def test_half_weight_params_vanish():
    params = ldpc_params(3, 6, 0.5)
    assert params.h == pytest.approx(0.0, abs=1e-12)
    assert params.y == pytest.approx(0.0, abs=1e-12)
    assert params.z == pytest.approx(0.0, abs=1e-12)
    assert params.omega_prime == pytest.approx(0.0)


def test_residual_is_small():
    for omega in (0.05, 0.2, 0.45):
        assert ldpc_params(3, 6, omega).residual <= 1e-9


def test_matches_fixed_type_bp(parity_spec, fast_opts):
    """Closed form and message passing agree on the (3,6) weight enumerator."""
    for omega in (0.1, 0.2, 0.3, 0.4, 0.5):
        nu = np.array([1.0 - omega, omega])
        mp, report = solve_fixed_type(parity_spec, nu, fast_opts)
        assert report.converged
        expected = growth_rate_fixed_type(parity_spec, nu, mp)
        assert ldpc_growth_rate_closed_form(3, 6, omega) == pytest.approx(expected, abs=1e-8)


def test_even_check_degree_is_symmetric():
    """All-ones is a codeword when r is even, so G(omega) = G(1 - omega)."""
    for omega in (0.1, 0.3):
        assert ldpc_growth_rate_closed_form(3, 6, omega) == pytest.approx(
            ldpc_growth_rate_closed_form(3, 6, 1 - omega), abs=1e-10
        )


def test_small_weight_is_negative():
    assert ldpc_growth_rate_closed_form(3, 6, 0.01) < 0


def test_curve_grid():
    curve = ldpc_growth_curve(3, 6, grid=9)
    omegas = [params.omega for params, _ in curve]
    assert omegas == pytest.approx([k / 10 for k in range(1, 10)])
    assert curve[4][1] == pytest.approx(0.5 * LOG2, abs=1e-12)
    for params, value in curve:
        assert value == pytest.approx(growth_from_params(3, 6, params))


def test_rejects_omega_on_edge():
    with pytest.raises(SpecError, match="omega"):
        ldpc_params(3, 6, 0.0)
    with pytest.raises(SpecError, match="omega"):
        ldpc_params(3, 6, 1.0)


def test_rejects_bad_degrees():
    with pytest.raises(SpecError, match="l >= 1"):
        ldpc_params(0, 6, 0.3)
