"""
Tests for the solver, the Duhamel operator, the monitors and the dilation symmetry
"""
import numpy as np
import pytest

from config import Config
from src.artifacts import read_csv
from src.errors import BlowupError, MeanNotZeroError, ResolutionError, TimeRangeError
from src.evolution import (
    SolverConfig,
    Trajectory,
    collocation_matrix,
    dilate,
    dilate_field,
    duhamel,
    energy,
    evolve,
    gauss_legendre,
    momentum,
    monitor_series,
    reconstruct,
    reduce_mean,
    residual_bo,
    time_derivative,
)
from src.evolution.export import (
    MONITOR_COLUMNS,
    monitors_to_csv,
    trajectory_from_bytes,
    trajectory_to_bytes,
    trajectory_to_csv,
)
from src.evolution.trajectory import step_count
from src.spectral.grid import Grid, field_from_function, to_spectral, zeros
from src.spectral.norms import sobolev_norm, sobolev_norms
from src.spectral.operators import free_evolve


def cos_data(grid, amplitude, N=1):
    return field_from_function(grid, lambda x: amplitude * np.cos(N * x))


class TestSolverConfig:
    def test_defaults(self):
        cfg = SolverConfig()
        assert cfg.dt == Config.DT
        assert cfg.dealias_fraction == pytest.approx(2 / 3)

    @pytest.mark.parametrize("kwargs", [{"dt": 0.0}, {"dealias_fraction": 1.5}, {"quadrature_order": 0}])
    def test_rejects(self, kwargs):
        with pytest.raises(ValueError):
            SolverConfig(**kwargs)

    def test_step_count(self):
        assert step_count(1.0, 1e-3) == 1000
        with pytest.raises(ValueError):
            step_count(1.0, 0.3)


class TestTrajectory:
    def test_lattice_lookup(self, grid):
        traj = evolve(cos_data(grid, 0.1), 0.1, SolverConfig(dt=0.01))
        assert len(traj) == 11
        assert traj.index_of(0.05) == 5
        np.testing.assert_array_equal(traj.at(0.1).coeffs, traj.states[-1])
        with pytest.raises(TimeRangeError):
            traj.index_of(0.055)
        with pytest.raises(TimeRangeError):
            traj.index_of(0.2)

    def test_states_are_read_only(self, grid):
        traj = evolve(cos_data(grid, 0.1), 0.02, SolverConfig(dt=0.01))
        with pytest.raises(ValueError):
            traj.states[0, 1] = 0.0

    def test_rejects_non_finite(self, grid):
        states = np.full((2, grid.n_modes), np.nan)
        with pytest.raises(ValueError):
            Trajectory(grid, 0.0, 0.1, states)


class TestMeanReduction:
    def test_split(self, grid):
        u0 = field_from_function(grid, lambda x: 1.0 + np.cos(x))
        v0, m = reduce_mean(u0)
        assert m == pytest.approx(1.0)
        np.testing.assert_allclose(v0.samples, np.cos(grid.x), atol=1e-14)

    def test_zero_mean_is_identity(self, grid):
        traj = evolve(cos_data(grid, 0.1), 0.05, SolverConfig(dt=0.01))
        assert reconstruct(traj, 0.0) is traj

    def test_reconstruction_solves_the_equation(self, grid):
        u0 = field_from_function(grid, lambda x: 0.5 + 0.1 * np.cos(x))
        v0, m = reduce_mean(u0)
        u = reconstruct(evolve(v0, 0.25, SolverConfig(dt=1e-3)), m)
        assert u.meta["galilean_mean"] == pytest.approx(0.5)
        assert np.max(residual_bo(u)) < 1e-6

    def test_evolve_rejects_mean(self, grid):
        with pytest.raises(MeanNotZeroError):
            evolve(field_from_function(grid, lambda x: 1.0 + np.cos(x)), 0.1)


class TestEvolve:
    def test_zero_stays_zero(self, grid):
        traj = evolve(zeros(grid), 0.1, SolverConfig(dt=0.01))
        assert np.max(np.abs(traj.states)) == 0.0

    def test_linear_regime(self, grid):
        eps = 1e-6
        u0 = to_spectral(cos_data(grid, eps))
        traj = evolve(u0, 1.0, SolverConfig(dt=0.01))
        assert sobolev_norm(traj.state(-1) - free_evolve(u0, 1.0), 0.0) <= 1e-9

    def test_mean_stays_zero(self, cos_run):
        assert np.max(np.abs(cos_run.states[:, 0])) <= 1e-12

    def test_blowup(self, grid):
        with pytest.raises(BlowupError) as info:
            evolve(cos_data(grid, 1.0), 0.1, SolverConfig(dt=0.01, blowup_threshold=0.5))
        assert info.value.time == pytest.approx(0.01)
        assert info.value.threshold == 0.5

    def test_meta_records_solver(self, grid):
        traj = evolve(cos_data(grid, 0.1), 0.02, SolverConfig(dt=0.01))
        assert traj.meta["solver"] == "lawson-rk4"
        assert traj.meta["dt"] == 0.01

    @pytest.mark.slow
    def test_fourth_order_self_convergence(self, grid):
        u0 = cos_data(grid, 0.1)
        dt = 0.02
        reference = evolve(u0, 1.0, SolverConfig(dt=dt / 8)).states[-1]
        errors = [
            sobolev_norms(grid, evolve(u0, 1.0, SolverConfig(dt=h)).states[-1] - reference)
            for h in (dt, dt / 2)
        ]
        assert errors[0] / errors[1] == pytest.approx(16.0, rel=0.2)


class TestResidual:
    def test_zero_trajectory(self, grid):
        traj = Trajectory(grid, 0.0, 0.1, np.zeros((6, grid.n_modes)))
        assert np.max(residual_bo(traj)) == 0.0

    def test_needs_five_samples(self, grid):
        traj = Trajectory(grid, 0.0, 0.1, np.zeros((4, grid.n_modes)))
        with pytest.raises(ValueError):
            residual_bo(traj)

    def test_time_derivative_exact_on_quartics(self):
        t = 0.1 * np.arange(9)
        states = np.stack([t ** 4, t ** 3 - 2 * t], axis=1)
        expected = np.stack([4 * t ** 3, 3 * t ** 2 - 2], axis=1)
        np.testing.assert_allclose(time_derivative(states, 0.1), expected, atol=1e-10)

    @pytest.mark.slow
    def test_solver_oracle(self, cos_run):
        assert np.max(residual_bo(cos_run)) <= 1e-7

    @pytest.mark.slow
    def test_fourth_order_decay(self, grid):
        u0 = cos_data(grid, 0.1)
        coarse = np.max(residual_bo(evolve(u0, 1.0, SolverConfig(dt=0.005))))
        fine = np.max(residual_bo(evolve(u0, 1.0, SolverConfig(dt=0.0025))))
        assert coarse / fine >= 12.0


class TestMonitors:
    @pytest.mark.parametrize("N", [1, 3])
    def test_cosine_values(self, grid, N):
        f = cos_data(grid, 1.0, N)
        assert momentum(f) == pytest.approx(np.pi, rel=1e-12)
        assert energy(f, 1) == pytest.approx(0.5 * N * np.pi, rel=1e-12)
        assert energy(f, -1) == pytest.approx(0.5 * N * np.pi, rel=1e-12)

    def test_rejects_sign(self, grid):
        with pytest.raises(ValueError):
            energy(cos_data(grid, 1.0), 0)

    @pytest.mark.slow
    def test_conservation(self, cos_run):
        drift = monitor_series(cos_run).drift()
        assert drift["mean"] <= 1e-12
        assert drift["momentum"] <= 1e-9
        assert drift["energy_minus"] <= 1e-8
        assert drift["energy_plus"] > 1e-6

    @pytest.mark.slow
    def test_conserved_sign_matches_config(self, cos_run):
        assert monitor_series(cos_run).conserved_sign() == Config.CONSERVED_CUBIC_SIGN


class TestDuhamel:
    def _lattice(self, grid, dt, n, func):
        states = np.stack([func(i * dt) for i in range(n + 1)])
        return Trajectory(grid, 0.0, dt, states)

    def test_zero_forcing(self, grid):
        G = Trajectory(grid, 0.0, 0.1, np.zeros((11, grid.n_modes)))
        assert np.max(np.abs(duhamel(G, 1.0).coeffs)) == 0.0

    def test_free_forcing(self, grid):
        phi = to_spectral(cos_data(grid, 1.0, 2))
        G = self._lattice(grid, 0.05, 20, lambda t: free_evolve(phi, t).coeffs)
        expected = 1.0 * free_evolve(phi, 1.0).coeffs
        np.testing.assert_allclose(duhamel(G, 1.0).coeffs, expected, atol=1e-12)

    def test_second_iterate_forcing(self):
        small = Grid(lam=1.0, n_modes=16)
        N, t = 1, 1.0

        def forcing(s):
            return to_spectral(field_from_function(
                small, lambda x: -0.5 * N * np.sin(2 * N * x - 2 * N ** 2 * s)
            )).coeffs

        G = self._lattice(small, 1.0 / 256, 256, forcing)
        expected = field_from_function(
            small,
            lambda x: (np.cos(2 * N * x - 2 * N ** 2 * t) - np.cos(2 * N * x - 4 * N ** 2 * t)) / (4 * N),
        )
        assert sobolev_norm(duhamel(G, t) - to_spectral(expected), 0.0) <= 1e-7

    def test_time_range(self, grid):
        G = Trajectory(grid, 0.0, 0.1, np.zeros((11, grid.n_modes)))
        with pytest.raises(TimeRangeError):
            duhamel(G, 1.5)
        shifted = Trajectory(grid, 0.5, 0.1, np.zeros((11, grid.n_modes)))
        with pytest.raises(TimeRangeError):
            duhamel(shifted, 1.0)

    @pytest.mark.parametrize("order", [1, 2, 4, 6])
    def test_gauss_legendre_exactness(self, order):
        nodes, weights = gauss_legendre(order)
        for degree in range(2 * order):
            assert weights @ nodes ** degree == pytest.approx(1.0 / (degree + 1), rel=1e-12)

    @pytest.mark.parametrize("order", [2, 4])
    def test_collocation_rows(self, order):
        nodes, _ = gauss_legendre(order)
        matrix = collocation_matrix(order)
        np.testing.assert_allclose(matrix.sum(axis=1), nodes, atol=1e-13)
        np.testing.assert_allclose(matrix @ nodes, 0.5 * nodes ** 2, atol=1e-13)


class TestDilation:
    def test_identity(self, grid):
        traj = evolve(cos_data(grid, 0.1), 0.05, SolverConfig(dt=0.01))
        assert dilate(traj, 1.0) is traj

    def test_l2_scaling(self, grid):
        g = to_spectral(cos_data(grid, 0.05))
        dilated = dilate_field(g, 2.0)
        assert dilated.grid.lam == 2.0
        assert sobolev_norm(dilated, 0.0) == pytest.approx(2 ** -0.5 * sobolev_norm(g, 0.0), rel=1e-12)

    def test_rescales_time(self, grid):
        traj = evolve(cos_data(grid, 0.1), 0.05, SolverConfig(dt=0.01))
        out = dilate(traj, 2.0)
        assert out.dt == pytest.approx(0.04)
        assert out.meta["dilation"] == 2.0

    def test_coarser_grid_raises(self, random_fields, grid):
        g = to_spectral(random_fields(1, band=20)[0])
        with pytest.raises(ResolutionError):
            dilate_field(g, 2.0, n_modes=16)

    def test_beta_below_one(self, grid):
        with pytest.raises(ValueError):
            dilate_field(to_spectral(cos_data(grid, 0.1)), 0.5)

    @pytest.mark.slow
    def test_commutes_with_evolution(self, grid):
        beta, dt, T = 2.0, 1e-3, 1.0
        u0 = to_spectral(cos_data(grid, 0.05))
        then_dilated = dilate(evolve(u0, T, SolverConfig(dt=dt)), beta)
        dilated_first = evolve(dilate_field(u0, beta), beta ** 2 * T, SolverConfig(dt=dt))
        step = int(beta ** 2)
        difference = dilated_first.states[::step] - then_dilated.states
        assert np.max(sobolev_norms(then_dilated.grid, difference)) <= 1e-6

    def test_residual_is_preserved(self, grid):
        traj = evolve(cos_data(grid, 0.1), 0.2, SolverConfig(dt=1e-3))
        assert np.max(residual_bo(dilate(traj, 2.0))) <= 2 * np.max(residual_bo(traj)) + 1e-15


class TestExport:
    def test_csv(self, tmp_path, grid):
        traj = evolve(cos_data(grid, 0.1), 0.02, SolverConfig(dt=0.01))
        table = read_csv(trajectory_to_csv(traj, tmp_path / "trajectory.csv"))
        assert len(table["t"]) == 3 * grid.n_modes
        np.testing.assert_allclose(table["u"][:grid.n_modes], 0.1 * np.cos(grid.x), atol=1e-15)

    def test_binary(self, grid):
        traj = evolve(cos_data(grid, 0.1), 0.02, SolverConfig(dt=0.01))
        back = trajectory_from_bytes(trajectory_to_bytes(traj))
        assert back.grid == grid and len(back) == len(traj)
        np.testing.assert_allclose(back.states, traj.states, atol=1e-15)

    def test_monitor_csv(self, tmp_path, grid):
        traj = evolve(cos_data(grid, 0.1), 0.05, SolverConfig(dt=0.01))
        table = read_csv(monitors_to_csv(monitor_series(traj), tmp_path / "monitors.csv"))
        assert tuple(table) == MONITOR_COLUMNS
        assert len(table["t"]) == 6

    def test_csv_is_deterministic(self, tmp_path, grid):
        traj = evolve(cos_data(grid, 0.1), 0.02, SolverConfig(dt=0.01))
        first = trajectory_to_csv(traj, tmp_path / "a.csv").read_bytes()
        second = trajectory_to_csv(evolve(cos_data(grid, 0.1), 0.02, SolverConfig(dt=0.01)), tmp_path / "b.csv").read_bytes()
        assert first == second
