"""
Integrating-factor pseudo-spectral solver for u_t + H u_xx - u u_x = 0

The linear part is integrated exactly through V(t); the quadratic term is
advanced by a Lawson RK4 step with 2/3-rule dealiasing.
"""
import logging
from typing import Tuple, Union

import numpy as np

from src.errors import BlowupError, MeanNotZeroError
from src.evolution.trajectory import SolverConfig, Trajectory, step_count
from src.spectral.grid import (
    Grid,
    RealField,
    SpectralField,
    inverse_transform,
    to_spectral,
    transform,
)
from src.spectral.norms import sobolev_norms
from src.spectral.operators import free_symbol, padded_product_coeffs, require_mean_zero

logger = logging.getLogger(__name__)

Field = Union[RealField, SpectralField]


def reduce_mean(u0: RealField) -> Tuple[RealField, float]:
    """Split u0 into its mean-zero part v0 and the mean m"""
    m = u0.mean
    return u0.shifted(-m), m


def reconstruct(v: Trajectory, m: float) -> Trajectory:
    """Undo the Galilean shift: u(t, x) = v(t, x + t m) + m"""
    if m == 0:
        return v
    phases = np.exp(1j * np.outer(v.times, v.grid.xi) * m)
    states = v.states * phases
    states[:, 0] += m * v.grid.period
    return v.with_states(states, galilean_mean=m)


def dealias_mask(grid: Grid, fraction: float) -> np.ndarray:
    cutoff = int(np.floor(fraction * grid.nyquist_index))
    return np.abs(grid.wavenumbers) <= cutoff


class LawsonStepper:
    """One Lawson RK4 step of z' = V(-t) N(V(t) z) written in the u variables"""

    def __init__(self, grid: Grid, cfg: SolverConfig):
        self.grid = grid
        self.dt = cfg.dt
        self.mask = dealias_mask(grid, cfg.dealias_fraction)
        self.half_step = free_symbol(grid, cfg.dt / 2.0)
        self.full_step = self.half_step ** 2
        self.symbol = 0.5j * grid.xi * self.mask

    def nonlinear(self, coeffs: np.ndarray) -> np.ndarray:
        """1/2 d_x (u^2) with the 2/3 rule applied to input and product"""
        period = self.grid.period
        u = inverse_transform(coeffs * self.mask, period).real
        return self.symbol * transform(u * u, period)

    def step(self, u: np.ndarray) -> np.ndarray:
        h, e, e2 = self.dt, self.half_step, self.full_step
        k1 = self.nonlinear(u)
        k2 = self.nonlinear(e * (u + 0.5 * h * k1))
        k3 = self.nonlinear(e * u + 0.5 * h * k2)
        k4 = self.nonlinear(e2 * u + h * e * k3)
        return e2 * u + (h / 6.0) * (e2 * k1 + 2.0 * e * (k2 + k3) + k4)


def _initial_coefficients(u0: Field) -> SpectralField:
    if isinstance(u0, RealField):
        return to_spectral(u0)
    return u0


def evolve(u0: Field, T: float, cfg: SolverConfig = None) -> Trajectory:
    """
    Integrate the equation from a mean-zero initial state

    Args:
        u0: Initial data (samples or coefficients) with vanishing mean
        T: Final time, a multiple of cfg.dt
        cfg: Solver parameters

    Returns:
        Trajectory holding every step on [0, T]

    Raises:
        MeanNotZeroError: If the initial mean exceeds the tolerance
        BlowupError: If the sup norm exceeds cfg.blowup_threshold or turns non-finite
    """
    cfg = cfg or SolverConfig()
    g0 = _initial_coefficients(u0)
    try:
        require_mean_zero(g0)
    except MeanNotZeroError:
        logger.error("evolve called with nonzero mean; apply reduce_mean first")
        raise
    grid = g0.grid
    n_steps = step_count(T, cfg.dt)
    stepper = LawsonStepper(grid, cfg)

    states = np.empty((n_steps + 1, grid.n_modes), dtype=complex)
    current = np.array(g0.coeffs, dtype=complex)
    current[0] = 0.0
    states[0] = current
    logger.info(f"evolving M={grid.n_modes} lambda={grid.lam} for {n_steps} steps of {cfg.dt}")

    for n in range(1, n_steps + 1):
        current = stepper.step(current)
        current[0] = 0.0
        current[grid.nyquist_index] = 0.0
        peak = float(np.max(np.abs(inverse_transform(current, grid.period))))
        if not np.isfinite(peak) or peak > cfg.blowup_threshold:
            logger.warning(f"blowup at t={n * cfg.dt}: sup norm {peak}")
            raise BlowupError(n * cfg.dt, peak, cfg.blowup_threshold)
        states[n] = current

    return Trajectory(grid, 0.0, cfg.dt, states, True, {"solver": "lawson-rk4", **cfg.as_dict()})


_INTERIOR = np.array([1.0, -8.0, 0.0, 8.0, -1.0])
_EDGE_0 = np.array([-25.0, 48.0, -36.0, 16.0, -3.0])
_EDGE_1 = np.array([-3.0, -10.0, 18.0, -6.0, 1.0])


def time_derivative(states: np.ndarray, dt: float) -> np.ndarray:
    """Fourth-order derivative along axis 0: central inside, one-sided at both ends"""
    states = np.asarray(states)
    n = states.shape[0]
    if n < 5:
        raise ValueError(f"time derivative needs at least 5 samples, got {n}")
    out = np.empty_like(states)
    scale = 1.0 / (12.0 * dt)
    out[2:n - 2] = scale * (
        _INTERIOR[0] * states[:n - 4]
        + _INTERIOR[1] * states[1:n - 3]
        + _INTERIOR[3] * states[3:n - 1]
        + _INTERIOR[4] * states[4:]
    )
    head = states[:5]
    tail = states[n - 1:n - 6 if n > 5 else None:-1]
    out[0] = scale * np.tensordot(_EDGE_0, head, axes=1)
    out[1] = scale * np.tensordot(_EDGE_1, head, axes=1)
    out[n - 1] = -scale * np.tensordot(_EDGE_0, tail, axes=1)
    out[n - 2] = -scale * np.tensordot(_EDGE_1, tail, axes=1)
    return out


def bo_residual_coeffs(traj: Trajectory) -> np.ndarray:
    """Coefficients of u_t + H u_xx - u u_x at every stored time"""
    grid = traj.grid
    xi = grid.xi
    u = traj.states
    u_t = time_derivative(u, traj.dt)
    square = padded_product_coeffs(u, u, grid.period, real=traj.real)
    return u_t + 1j * xi * np.abs(xi) * u - 0.5j * xi * square


def residual_bo(traj: Trajectory) -> np.ndarray:
    """L^2 norm of u_t + H u_xx - u u_x per stored time (needs >= 5 samples)"""
    return sobolev_norms(traj.grid, bo_residual_coeffs(traj))
