"""
Shared fixtures: grids, a seeded generator and random mean-zero fields
"""
import numpy as np
import pytest

from src.evolution.solver import evolve
from src.evolution.trajectory import SolverConfig
from src.spectral.grid import Grid, field_from_function, random_band_limited


@pytest.fixture
def grid():
    return Grid(lam=1.0, n_modes=64)


@pytest.fixture
def fine_grid():
    return Grid(lam=1.0, n_modes=256)


@pytest.fixture
def wide_grid():
    return Grid(lam=2.0, n_modes=128)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def random_fields(grid, rng):
    """Factory for random real mean-zero band-limited fields on `grid`"""

    def make(count, band=8, amplitude=1.0, on=None):
        target = on or grid
        return [random_band_limited(target, band, rng, amplitude) for _ in range(count)]

    return make


@pytest.fixture(scope="session")
def cos_run():
    """evolve(0.1 cos x) on M=256, dt=1e-3, T=1, shared by the solver and gauge oracles"""
    g = Grid(lam=1.0, n_modes=256)
    u0 = field_from_function(g, lambda x: 0.1 * np.cos(x))
    return evolve(u0, 1.0, SolverConfig(dt=1e-3))

