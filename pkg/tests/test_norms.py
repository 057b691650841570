"""
Tests for the space-time transform, the Bourgain-type norms and the Strichartz probe
"""
import numpy as np
import pytest

from src.errors import NormParameterError, TimeRangeError
from src.evolution import SolverConfig, Trajectory, evolve
from src.norms import (
    NormFamily,
    TaperKind,
    TaperSpec,
    bourgain_norm,
    lebesgue_st_norm,
    lp_block,
    norm_report,
    st_transform,
    strichartz_quotient,
    strichartz_ratio,
    sup_norm_in_time,
)
from src.norms.bourgain import a_norm, l4tilde_norm, x_norm, z_norm
from src.norms.spectrum import lp_block_count, lp_mask, next_power_of_two
from src.norms.strichartz import random_field, sample_generator
from src.spectral.grid import Grid, field_from_function, to_spectral
from src.spectral.norms import sobolev_norm
from src.spectral.operators import free_symbol

BOXCAR = TaperSpec(TaperKind.BOXCAR)


def free_wave(grid, phi, n_times, dt):
    """Samples of V(t) phi on the lattice n*dt"""
    times = dt * np.arange(n_times)
    states = np.stack([phi.coeffs * free_symbol(grid, t) for t in times])
    return Trajectory(grid, 0.0, dt, states, real=phi.real)


def single_mode(grid, N, n_times, dt):
    """e^{i(Nx - N^2 t)} as a complex trajectory"""
    states = np.zeros((n_times, grid.n_modes), dtype=complex)
    states[:, N] = grid.period * np.exp(-1j * N ** 2 * dt * np.arange(n_times))
    return Trajectory(grid, 0.0, dt, states, real=False)


def random_spectra(count, seed=7):
    """Seeded random windowed fields on M=32 with 16 time samples"""
    grid = Grid(lam=1.0, n_modes=32)
    return [
        st_transform(random_field(grid, 16, sample_generator(seed, i), band=12, sigma_band=24.0))
        for i in range(count)
    ]


# (b, s) per family for the conjugation check
FAMILY_PARAMETERS = [
    (NormFamily.X, {"b": 0.5, "s": -0.5}),
    (NormFamily.XDOT, {"b": 0.875, "s": 0.5}),
    (NormFamily.Z, {"b": 0.0, "s": 1.0}),
    (NormFamily.A, {"b": 0.5}),
    (NormFamily.Y, {"s": 0.25}),
    (NormFamily.L4TILDE, {}),
    (NormFamily.N, {}),
    (NormFamily.MS, {"s": 0.0}),
]


@pytest.fixture
def small_run(grid):
    u0 = field_from_function(grid, lambda x: 0.2 * np.cos(x) + 0.1 * np.sin(2 * x))
    return evolve(u0, 0.16, SolverConfig(dt=0.01))


class TestTaper:
    def test_bump_shape(self):
        w = TaperSpec().weights(17)
        assert w[0] == 0.0 and w[-1] == 0.0
        np.testing.assert_array_equal(w[4:13], 1.0)
        assert np.all((w >= 0) & (w <= 1))

    def test_boxcar(self):
        np.testing.assert_array_equal(BOXCAR.weights(9), 1.0)

    def test_rejects_kind(self):
        with pytest.raises(ValueError):
            TaperSpec("hann")

    @pytest.mark.parametrize("n,expected", [(1, 1), (8, 8), (9, 16), (100, 128)])
    def test_next_power_of_two(self, n, expected):
        assert next_power_of_two(n) == expected


class TestTransform:
    def test_padding(self, small_run):
        S = st_transform(small_run)
        assert S.n_times == 17
        assert S.n_pad == 64

    def test_too_few_samples(self, grid):
        traj = Trajectory(grid, 0.0, 0.1, np.zeros((7, grid.n_modes)))
        with pytest.raises(TimeRangeError):
            st_transform(traj)

    def test_hermitian_symmetry(self, small_run):
        S = st_transform(small_run)
        scale = np.max(np.abs(S.data))
        np.testing.assert_allclose(S.conjugate().data, S.data, atol=1e-12 * scale)

    def test_free_wave_sits_on_the_surface(self):
        grid = Grid(lam=1.0, n_modes=16)
        S = st_transform(single_mode(grid, 1, 128, 2 * np.pi / 128), BOXCAR)
        energy = np.abs(S.data[:, 1]) ** 2
        off_line = np.abs(S.sigma[:, 1]) > 16.0
        assert np.argmax(energy) == np.argmin(np.abs(S.sigma[:, 1]))
        assert energy[off_line].sum() <= 0.01 * energy.sum()


class TestBourgainNorms:
    def test_zero_field(self, grid):
        S = st_transform(Trajectory(grid, 0.0, 0.1, np.zeros((8, grid.n_modes))))
        report = norm_report(S, b=0.5, s=0.0)
        assert all(value == 0.0 for value in report.values.values())

    @pytest.mark.parametrize("s", [0.0, 1.0, -0.5])
    def test_free_solution_separates(self, random_fields, s):
        grid = Grid(lam=1.0, n_modes=64)
        phi = to_spectral(random_fields(1, band=6, on=grid)[0])
        n_times, dt = 64, 1.0 / 64
        S = st_transform(free_wave(grid, phi, n_times, dt), BOXCAR)
        expected = sobolev_norm(phi, s) * np.sqrt(n_times * dt)
        assert x_norm(S, 0.0, s) == pytest.approx(expected, rel=1e-3)

    def test_monotone_in_b_and_s(self, small_run):
        S = st_transform(small_run)
        assert x_norm(S, 0.25, 0.0) <= x_norm(S, 0.5, 0.0) <= x_norm(S, 1.0, 0.0)
        assert x_norm(S, 0.5, 0.0) <= x_norm(S, 0.5, 1.0)
        assert z_norm(S, 0.0, 0.0) <= z_norm(S, 0.5, 0.0)

    def test_monotone_on_random_spectra(self):
        for S in random_spectra(100):
            assert x_norm(S, 0.25, 0.0) <= x_norm(S, 0.5, 0.0) <= x_norm(S, 1.0, 0.0)
            assert x_norm(S, 0.5, -0.5) <= x_norm(S, 0.5, 0.0) <= x_norm(S, 0.5, 1.0)
            assert bourgain_norm(S, NormFamily.XDOT, b=0.5, s=0.0) <= x_norm(S, 0.5, 0.0)

    @pytest.mark.parametrize("family,kwargs", FAMILY_PARAMETERS)
    def test_conjugation_isometry(self, grid, family, kwargs):
        traj = random_field(grid, 32, sample_generator(3, 0), band=6, sigma_band=16.0)
        S = st_transform(traj)
        expected = bourgain_norm(S, family, **kwargs)
        assert expected > 0
        assert bourgain_norm(S.conjugate(), family, **kwargs) == pytest.approx(expected, rel=1e-12)

    def test_sup_bounds(self, small_run):
        S = st_transform(small_run)
        assert sup_norm_in_time(S, 0.0) <= z_norm(S, 0.0, 0.0) * (1 + 1e-12)
        assert lebesgue_st_norm(S, np.inf) <= a_norm(S, 0.0) * (1 + 1e-12)

    def test_report_labels(self, small_run):
        report = norm_report(st_transform(small_run), b=0.5, s=0.0)
        assert set(report.values) == {
            "X^{0.5,0.0}", "Xdot^{0.5,0.0}", "Z^{0.5,0.0}", "A^{0.5}", "Y^{0.0}",
            "L4tilde", "L4", "N", "M^{0.0}",
        }
        assert report.to_json()["parameters"] == {"b": 0.5, "s": 0.0}

    def test_y_is_sum(self, small_run):
        S = st_transform(small_run)
        expected = x_norm(S, 0.5, 0.25) + z_norm(S, 0.0, 0.25)
        assert bourgain_norm(S, NormFamily.Y, s=0.25) == pytest.approx(expected)

    @pytest.mark.parametrize("family,kwargs", [
        ("X", {"b": 0.5}),
        ("A", {"b": 0.5, "s": 0.0}),
        ("L4tilde", {"b": 0.5}),
        ("X", {"b": 3.0, "s": 0.0}),
        ("Z", {"b": 0.0, "s": np.nan}),
        ("Q", {}),
    ])
    def test_parameter_errors(self, small_run, family, kwargs):
        with pytest.raises(NormParameterError):
            bourgain_norm(st_transform(small_run), family, **kwargs)


class TestLittlewoodPaley:
    @pytest.mark.parametrize("lam,n_modes", [(1.0, 64), (2.0, 128), (3.0, 32)])
    def test_partition_of_unity(self, lam, n_modes):
        grid = Grid(lam=lam, n_modes=n_modes)
        masks = np.stack([lp_mask(grid, j) for j in range(lp_block_count(grid))])
        resolved = np.abs(grid.wavenumbers) < grid.nyquist_index
        np.testing.assert_array_equal(masks.sum(axis=0)[resolved], 1)

    def test_negative_index(self, grid):
        with pytest.raises(ValueError):
            lp_mask(grid, -1)

    def test_single_block_field(self, grid):
        S = st_transform(single_mode(grid, 5, 16, 0.05))
        assert l4tilde_norm(S) == pytest.approx(lebesgue_st_norm(S, 4), rel=1e-12)
        assert np.max(np.abs(lp_block(S, 2).data)) > 0
        assert np.max(np.abs(lp_block(S, 1).data)) == 0.0

    def test_l4_against_square_sum(self, small_run):
        S = st_transform(small_run)
        blocks = lp_block_count(S.grid)
        assert lebesgue_st_norm(S, 4) <= np.sqrt(blocks) * l4tilde_norm(S) * (1 + 1e-12)

    def test_square_sum_controls_l4(self):
        ratios = [lebesgue_st_norm(S, 4) / l4tilde_norm(S) for S in random_spectra(200, seed=19)]
        assert max(ratios) <= 2.0


class TestStrichartz:
    def test_quotient_of_zero(self, grid):
        S = st_transform(Trajectory(grid, 0.0, 0.1, np.zeros((8, grid.n_modes))))
        assert strichartz_quotient(S) == 0.0

    def test_deterministic(self):
        grid = Grid(lam=1.0, n_modes=32)
        first = strichartz_ratio(4, seed=11, grid=grid, n_times=16)
        second = strichartz_ratio(4, seed=11, grid=grid, n_times=16)
        np.testing.assert_array_equal(first.ratios, second.ratios)
        assert np.all(np.isfinite(first.ratios)) and np.all(first.ratios > 0)

    def test_samples_are_independent(self):
        grid = Grid(lam=1.0, n_modes=32)
        short = strichartz_ratio(2, seed=5, grid=grid, n_times=16)
        longer = strichartz_ratio(4, seed=5, grid=grid, n_times=16)
        np.testing.assert_array_equal(longer.ratios[:2], short.ratios)

    def test_summary(self, tmp_path):
        result = strichartz_ratio(3, seed=1, grid=Grid(lam=1.0, n_modes=32), n_times=16)
        summary = result.summary()
        assert summary["sample_count"] == 3
        assert summary["max_ratio"] == result.max_ratio
        assert set(summary["quantiles"]) == {"0.5", "0.9", "0.99"}

    def test_band_check(self, grid):
        with pytest.raises(ValueError):
            random_field(grid, 16, sample_generator(0, 0), band=grid.nyquist_index)

    @pytest.mark.slow
    def test_stable_across_seeds(self):
        grid = Grid(lam=1.0, n_modes=64)
        maxima = np.array([
            strichartz_ratio(500, seed=seed, grid=grid, n_times=64).max_ratio
            for seed in range(5)
        ])
        assert np.all(np.abs(maxima / maxima.mean() - 1.0) <= 0.1)

    @pytest.mark.slow
    def test_bounded_under_refinement(self):
        coarse = strichartz_ratio(500, seed=0, grid=Grid(lam=1.0, n_modes=64), n_times=64)
        fine = strichartz_ratio(500, seed=0, grid=Grid(lam=1.0, n_modes=128), n_times=128)
        assert fine.max_ratio <= 1.15 * coarse.max_ratio
