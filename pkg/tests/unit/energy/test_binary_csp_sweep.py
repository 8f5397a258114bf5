from math import comb

import numpy as np
import pytest

from bethe.core.models import PdOptions, PopulationInit, RegularSpec, SolveOptions, Solver
from bethe.energy.annealed import annealed_regular
from bethe.energy.growth import best_point, growth_rate_curve
from bethe.ensemble import factors
from bethe.replica.operations import rs_free_energy
from tests.conftest import LOG2

GRID = 201
HALF = GRID // 2


def csp_spec(k: int) -> RegularSpec:
    return RegularSpec(10, 20, factors.binary_csp_factor(20, k))


def uniform_value(k: int) -> float:
    """(1/2) log #satisfying tuples - 9 log 2, the growth rate at nu = (1/2, 1/2)."""
    satisfying = 2**20 - sum(comb(20, w) for w in range(11 - k, 10 + k))
    return 0.5 * float(np.log(satisfying)) - 9 * LOG2


@pytest.fixture(scope="module")
def curves():
    """Undamped sweeps of the (10,20) ensemble for k = 1, 2, 3."""
    return {k: growth_rate_curve(csp_spec(k), GRID, SolveOptions()) for k in (1, 2, 3)}


def test_uniform_value_counts():
    assert uniform_value(1) == pytest.approx(0.5 * np.log(863820) - 9 * LOG2, abs=1e-12)
    assert uniform_value(3) == pytest.approx(0.5 * np.log(275960) - 9 * LOG2, abs=1e-12)


# === SWEEP ===
@pytest.mark.slow
@pytest.mark.timeout(300)
def test_curves_are_symmetric(curves):
    for points in curves.values():
        assert len(points) == GRID
        for i in range(GRID):
            a, b = points[i].value, points[GRID - 1 - i].value
            assert np.isfinite(a) == np.isfinite(b)
            if np.isfinite(a):
                assert a == pytest.approx(b, abs=1e-9)


@pytest.mark.slow
@pytest.mark.timeout(300)
def test_maximum_is_off_the_uniform_type(curves):
    for k, points in curves.items():
        assert points[HALF].nu == pytest.approx([0.5, 0.5])
        assert points[HALF].value == pytest.approx(uniform_value(k), abs=1e-8)
        best, value = best_point(points)
        assert abs(best.nu[1] - 0.5) > 0.01
        assert value > points[HALF].value


@pytest.mark.slow
@pytest.mark.timeout(300)
def test_k1_maximizer(curves):
    best, value = best_point(curves[1])
    assert min(best.nu[1], 1.0 - best.nu[1]) == pytest.approx(0.365, abs=0.011)
    assert value == pytest.approx(0.609735, abs=1e-5)


@pytest.mark.slow
@pytest.mark.timeout(300)
def test_k3_unconverged_region_is_filled_by_newton(curves):
    points = curves[3]
    center = points[HALF]
    assert not center.converged
    assert center.solver == Solver.NEWTON
    assert center.value == pytest.approx(uniform_value(3), abs=1e-8)

    lo = hi = HALF
    while lo > 0 and not points[lo - 1].converged:
        lo -= 1
    while hi < GRID - 1 and not points[hi + 1].converged:
        hi += 1
    assert all(np.isfinite(p.value) for p in points[lo : hi + 1])
    assert all(p.solver == Solver.NEWTON for p in points[lo : hi + 1])


@pytest.mark.slow
@pytest.mark.timeout(300)
def test_k1_uniform_point_stays_converged(curves):
    assert curves[1][HALF].converged
    assert curves[1][HALF].solver == Solver.BP


# === ANNEALED VS RS ===
def test_rs_at_uniform_messages_is_uniform_value(small_pd):
    result = rs_free_energy(csp_spec(1), small_pd, PopulationInit.UNIFORM)
    assert result.value == pytest.approx(uniform_value(1), abs=1e-9)
    assert result.stderr == pytest.approx(0.0, abs=1e-9)


@pytest.mark.slow
@pytest.mark.timeout(300)
def test_annealed_dominates_sweep_and_uniform_value(curves):
    result = annealed_regular(csp_spec(1), SolveOptions(), grid=GRID)
    finite = [p.value for p in curves[1] if np.isfinite(p.value)]
    assert result.value >= max(finite) - 1e-9
    assert result.value > uniform_value(1) + 0.01

    rs = rs_free_energy(csp_spec(1), PdOptions(population=500, sweeps=5, samples=5_000))
    assert rs.value == pytest.approx(uniform_value(1), abs=1e-9)
    assert result.value > rs.value
