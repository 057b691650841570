"""
Residuals of the gauge-side equations along a computed trajectory

Every residual is the per-time L^2 norm of (left side - right side); time
derivatives use the fourth-order stencils of the solver module.
"""
from dataclasses import dataclass
from pathlib import Path
from typing import List

import numpy as np

from config import Config
from src.artifacts import PathLike, write_csv
from src.errors import MeanNotZeroError
from src.evolution.solver import time_derivative
from src.evolution.trajectory import Trajectory
from src.gauge.transform import GaugeArrays, conjugate_coeffs, fine_product, mask, primitive_coeffs
from src.spectral.norms import sobolev_norms
from src.spectral.operators import ProjectionKind, padded_product_coeffs

RESIDUAL_COLUMNS = ("t", "residual_F", "residual_w", "residual_w2")


def _require_mean_zero(traj: Trajectory) -> None:
    worst = float(np.max(np.abs(traj.states[:, 0])))
    if worst > Config.TOL_MEAN:
        raise MeanNotZeroError(worst, Config.TOL_MEAN)


def _mean_square(traj: Trajectory) -> np.ndarray:
    """P_0(F_x^2) = P_0(u^2) as a value per time, shape (n, 1)"""
    grid = traj.grid
    total = grid.measure * np.sum(np.abs(traj.states) ** 2, axis=-1)
    return (total * grid.measure)[:, None]


def _gauge_arrays(traj: Trajectory) -> GaugeArrays:
    # roundoff in the top modes of exp(-iF/2) is amplified by xi^3 in w_xx
    _require_mean_zero(traj)
    return GaugeArrays.from_coefficients(traj.grid, traj.states).without_roundoff_modes()


def residual_F_eq(traj: Trajectory) -> np.ndarray:
    """F_t + H F_xx - F_x^2/2 + P_0(F_x^2)/2 with F the primitive of u"""
    _require_mean_zero(traj)
    grid = traj.grid
    xi = grid.xi
    F = primitive_coeffs(grid, traj.states)
    square = padded_product_coeffs(traj.states, traj.states, grid.period, real=True)
    square[:, 0] = 0.0
    residual = time_derivative(F, traj.dt) + 1j * xi * np.abs(xi) * F - 0.5 * square
    return sobolev_norms(grid, residual)


def _w_lhs(traj: Trajectory, arrays: GaugeArrays) -> np.ndarray:
    """w_t - i w_xx"""
    return time_derivative(arrays.w, traj.dt) + 1j * traj.grid.xi ** 2 * arrays.w


def residual_w_eq(traj: Trajectory) -> np.ndarray:
    """w_t - i w_xx + d_x P_+(W P_-(u_x)) - (i/4) P_0(F_x^2) w"""
    grid = traj.grid
    xi = grid.xi
    arrays = _gauge_arrays(traj)
    plus = mask(grid, ProjectionKind.PLUS)
    minus = mask(grid, ProjectionKind.MINUS)

    u_x_minus = 1j * xi * arrays.u * minus
    transport = -1j * xi * plus * fine_product(grid, arrays.W, u_x_minus)
    potential = 0.25j * _mean_square(traj) * arrays.w
    return sobolev_norms(grid, _w_lhs(traj, arrays) - transport - potential)


def residual_w_eq2(traj: Trajectory) -> np.ndarray:
    """
    w-equation after substituting the negative-mode identity for P_-(u):

    w_t - i w_xx = 2i d_x P_+(W d_x P_-(e^{-iF/2} conj(w)))
                 + 2i d_x P_+(W d_x P_-(e^{-iF/2} d_x P_+(e^{iF/2})))
                 + (i/4) P_0(F_x^2) w
    """
    grid = traj.grid
    xi = grid.xi
    arrays = _gauge_arrays(traj)
    plus = mask(grid, ProjectionKind.PLUS)
    minus = mask(grid, ProjectionKind.MINUS)

    w_bar = conjugate_coeffs(grid, arrays.w)
    d_plus_inverse = 1j * xi * arrays.inverse_factor * plus
    first_inner = 1j * xi * minus * fine_product(grid, arrays.factor, w_bar)
    second_inner = 1j * xi * minus * fine_product(grid, arrays.factor, d_plus_inverse)

    first = 2j * 1j * xi * plus * fine_product(grid, arrays.W, first_inner)
    second = 2j * 1j * xi * plus * fine_product(grid, arrays.W, second_inner)
    potential = 0.25j * _mean_square(traj) * arrays.w
    return sobolev_norms(grid, _w_lhs(traj, arrays) - first - second - potential)


@dataclass
class ResidualSeries:
    times: np.ndarray
    residual_F: np.ndarray
    residual_w: np.ndarray
    residual_w2: np.ndarray

    def rows(self) -> List[tuple]:
        return list(zip(self.times, self.residual_F, self.residual_w, self.residual_w2))

    def maxima(self) -> dict:
        return {
            "residual_F": float(np.max(self.residual_F)),
            "residual_w": float(np.max(self.residual_w)),
            "residual_w2": float(np.max(self.residual_w2)),
        }


def residual_series(traj: Trajectory) -> ResidualSeries:
    return ResidualSeries(
        times=traj.times,
        residual_F=residual_F_eq(traj),
        residual_w=residual_w_eq(traj),
        residual_w2=residual_w_eq2(traj),
    )


def residuals_to_csv(series: ResidualSeries, path: PathLike) -> Path:
    return write_csv(path, RESIDUAL_COLUMNS, series.rows())
