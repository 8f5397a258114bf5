import numpy as np
import pytest

from bethe.bp import terms
from bethe.bp.solvers import (
    solve_field,
    solve_fixed_type,
    solve_irregular,
    solve_poisson,
    solve_random_field,
    solve_regular,
)
from bethe.core.errors import SpecError
from bethe.core.models import (
    Alphabet,
    FactorTable,
    FieldSpec,
    IrregularSpec,
    MessagePair,
    PoissonSpec,
    RandomFieldSpec,
    RegularSpec,
    SolveOptions,
)
from bethe.energy.objectives import fixed_point_residual
from bethe.ensemble import factors
from tests.conftest import LOG2


# === REGULAR ===
def test_regular_ones_is_log2(ones_spec, fast_opts):
    mp, report = solve_regular(ones_spec, fast_opts)
    assert report.converged
    assert report.objective == pytest.approx(LOG2, abs=1e-12)
    assert mp.m_fv == pytest.approx([0.5, 0.5])


def test_regular_parity_prefers_uniform_point(parity_spec, fast_opts):
    mp, report = solve_regular(parity_spec, fast_opts)
    assert report.converged
    assert report.objective == pytest.approx(0.5 * LOG2, abs=1e-12)
    assert terms.regular_value(parity_spec, mp) == pytest.approx(report.objective)


def test_regular_coloring_only_uniform_converges(coloring_spec, fast_opts):
    """NOT-EQUAL with l=2 swaps the message each step; only the uniform start settles."""
    _, report = solve_regular(coloring_spec, fast_opts)
    assert report.converged
    assert report.restart == 0
    assert report.converged_starts == 1
    assert report.objective == pytest.approx(0.0, abs=1e-12)


def test_regular_reports_non_convergence(coloring_spec):
    opts = SolveOptions(max_iters=50, restarts=0)
    init = MessagePair(np.array([0.8, 0.2]), np.array([0.2, 0.8]))
    _, report = solve_regular(coloring_spec, opts, init)
    assert not report.converged
    assert report.iterations == 50
    assert report.residual == pytest.approx(0.6)


def test_regular_damping_keeps_fixed_point(parity_spec):
    opts = SolveOptions(tol=1e-12, damping=0.5, restarts=1, rng_seed=2)
    _, report = solve_regular(parity_spec, opts)
    assert report.objective == pytest.approx(0.5 * LOG2, abs=1e-10)


def test_damped_step_returns_damped_state(coloring_spec):
    """One step at damping 0.5 from (0.8, 0.2) lands halfway to the swapped message."""
    opts = SolveOptions(max_iters=1, damping=0.5, restarts=0)
    init = MessagePair(np.array([0.8, 0.2]), np.array([0.5, 0.5]))
    mp, report = solve_regular(coloring_spec, opts, init)
    assert mp.m_vf == pytest.approx([0.5, 0.5])
    assert mp.m_fv == pytest.approx([0.2, 0.8])
    assert report.residual == pytest.approx(0.3)


def test_damped_result_is_a_fixed_point(parity_spec):
    opts = SolveOptions(tol=1e-12, damping=0.5, restarts=1, rng_seed=2)
    mp, report = solve_regular(parity_spec, opts)
    assert report.converged
    assert fixed_point_residual(mp, parity_spec) <= 1e-10


# === FIELDS ===
def test_field_ones_matches_regular(parity_spec, fast_opts):
    _, plain = solve_regular(parity_spec, fast_opts)
    _, with_field = solve_field(parity_spec, FieldSpec.ones(2), fast_opts)
    assert with_field.objective == pytest.approx(plain.objective, abs=1e-12)


def test_field_shape_mismatch(parity_spec):
    with pytest.raises(SpecError, match="field has 3 entries"):
        solve_field(parity_spec, FieldSpec(np.ones(3)))


def test_random_field_single_field_matches_field(ones_spec, fast_opts):
    h = FieldSpec(np.array([2.0, 1.0]))
    _, fixed = solve_field(ones_spec, h, fast_opts)
    _, mixed = solve_random_field(ones_spec, RandomFieldSpec((h,), np.array([1.0])), fast_opts)
    assert mixed.objective == pytest.approx(fixed.objective, abs=1e-10)
    # f = 1 decouples: log sum_x h(x) = log 3
    assert fixed.objective == pytest.approx(np.log(3.0), abs=1e-10)


# === FIXED TYPE ===
def test_fixed_type_ones_gives_entropy(ones_spec, fast_opts):
    nu = np.array([0.3, 0.7])
    mp, report = solve_fixed_type(ones_spec, nu, fast_opts)
    assert report.converged
    assert report.objective == pytest.approx(0.610864, abs=1e-6)
    assert mp.m_vf == pytest.approx(nu)


def test_fixed_type_damping_keeps_type(ones_spec):
    nu = np.array([0.3, 0.7])
    opts = SolveOptions(tol=1e-12, damping=0.5, restarts=0)
    mp, report = solve_fixed_type(ones_spec, nu, opts)
    assert report.converged
    assert mp.m_vf == pytest.approx(nu, abs=1e-10)


def test_fixed_type_rejects_bad_nu(ones_spec):
    with pytest.raises(SpecError, match="distribution"):
        solve_fixed_type(ones_spec, np.array([0.3, 0.3]))


def test_fixed_type_parity_uniform(parity_spec, fast_opts):
    _, report = solve_fixed_type(parity_spec, np.array([0.5, 0.5]), fast_opts)
    assert report.objective == pytest.approx(0.5 * LOG2, abs=1e-10)


# === POISSON ===
def test_poisson_coloring_uniform_point():
    spec = PoissonSpec(1.0, 2, factors.not_equal_factor())
    state, report = solve_poisson(spec, SolveOptions(restarts=0))
    assert report.converged
    assert state.e == pytest.approx(4.0)
    assert state.coupling == pytest.approx(2.0)
    assert report.objective == pytest.approx(0.0, abs=1e-12)


def test_poisson_ones_is_log2():
    spec = PoissonSpec(0.5, 3, factors.ones_factor(3))
    _, report = solve_poisson(spec, SolveOptions(restarts=2, rng_seed=1))
    assert report.objective == pytest.approx(LOG2, abs=1e-10)


# === IRREGULAR ===
def test_irregular_single_degrees_reduce_to_regular(parity_spec, fast_opts):
    spec = IrregularSpec({3: 1.0}, {6: 1.0}, {6: parity_spec.factor})
    state, report = solve_irregular(spec, fast_opts)
    assert report.converged
    assert report.objective == pytest.approx(0.5 * LOG2, abs=1e-10)
    assert state.l_w == pytest.approx({3: 1.0})
    assert state.r_w == pytest.approx({6: 1.0})


def test_irregular_zero_rate_parity(fast_opts):
    spec = IrregularSpec({2: 0.5, 4: 0.5}, {3: 1.0}, {3: factors.parity_check_factor(3)})
    _, report = solve_irregular(spec, fast_opts)
    assert report.converged
    assert report.objective == pytest.approx(0.0, abs=1e-10)


# === STATIONARITY ===
def _central_gradient(value, mp: MessagePair, step: float = 1e-6) -> np.ndarray:
    """Central differences of value(mp) in every unnormalized message coordinate."""
    grads = []
    for name in ("m_vf", "m_fv"):
        for i in range(len(getattr(mp, name))):
            up, down = mp.copy(), mp.copy()
            getattr(up, name)[i] += step
            getattr(down, name)[i] -= step
            grads.append((value(up) - value(down)) / (2 * step))
    return np.array(grads)


def test_regular_fixed_point_is_stationary():
    """Tilted factor exp(0.2 weight) gives non-uniform messages."""
    weight = np.indices((2, 2, 2)).sum(axis=0)
    table = FactorTable(np.exp(0.2 * weight), Alphabet.binary(), perm_invariant=True)
    spec = RegularSpec(2, 3, table)
    mp, report = solve_regular(spec, SolveOptions(tol=1e-13, restarts=1))
    assert report.converged
    assert mp.m_fv[1] > mp.m_fv[0]
    grad = _central_gradient(lambda p: terms.regular_value(spec, p), mp)
    assert np.max(np.abs(grad)) <= 1e-5


@pytest.mark.parametrize(
    ("spec", "nu1"),
    [
        (RegularSpec(3, 6, factors.parity_check_factor(6)), 0.3),
        (RegularSpec(3, 6, factors.parity_check_factor(6)), 0.1),
        (RegularSpec(10, 20, factors.binary_csp_factor(20, 1)), 0.365),
        (RegularSpec(10, 20, factors.binary_csp_factor(20, 2)), 0.2),
    ],
)
def test_fixed_type_fixed_point_is_stationary(spec, nu1):
    nu = np.array([1.0 - nu1, nu1])
    mp, report = solve_fixed_type(spec, nu, SolveOptions(tol=1e-13))
    assert report.converged
    grad = _central_gradient(lambda p: terms.fixed_type_value(spec, nu, p), mp)
    assert np.max(np.abs(grad)) <= 1e-5
