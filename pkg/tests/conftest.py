import numpy as np
import pytest

from bethe.core.models import (
    NewtonOptions,
    PdOptions,
    RegularSpec,
    SolveOptions,
)
from bethe.ensemble import factors
from bethe.lib import paths

LOG2 = float(np.log(2.0))


@pytest.fixture(autouse=True)
def isolated_home(monkeypatch, tmp_path):
    """Isolated ~/.bethe per test; no config leaks in from the environment.

    Provides:
    - Temporary home with an empty .bethe directory
    - BETHE_CONFIG unset
    """
    home = tmp_path / "home"
    dot_bethe = home / ".bethe"
    dot_bethe.mkdir(parents=True)
    monkeypatch.delenv(paths.CONFIG_ENV, raising=False)
    monkeypatch.setattr(paths, "dot_bethe", lambda: dot_bethe)
    return dot_bethe


@pytest.fixture
def fast_opts():
    """BP options for small instances: few restarts, tight tolerance."""
    return SolveOptions(tol=1e-12, max_iters=5_000, restarts=2, rng_seed=7)


@pytest.fixture
def newton_opts():
    return NewtonOptions()


@pytest.fixture
def small_pd():
    """Population options that keep a full run under a second."""
    return PdOptions(population=500, sweeps=20, samples=5_000, rng_seed=3)


@pytest.fixture
def ones_spec():
    """(3,6) ensemble with f = 1 everywhere."""
    return RegularSpec(3, 6, factors.ones_factor(6))


@pytest.fixture
def parity_spec():
    """(3,6) regular LDPC ensemble."""
    return RegularSpec(3, 6, factors.parity_check_factor(6))


@pytest.fixture
def coloring_spec():
    """(2,2) ensemble with the NOT-EQUAL factor: random 2-regular graphs, 2-coloring."""
    return RegularSpec(2, 2, factors.not_equal_factor())


def binary_csp_spec(l: int, r: int, k: int) -> RegularSpec:
    return RegularSpec(l, r, factors.binary_csp_factor(r, k))
