"""
Power-series side of the gauge transform

W = P_+(exp(-i eps F/2)) = sum_k (-i eps/2)^k / k! P_+(F^k), compared with the
pointwise exponential, and the first-order gauge w ~ -(i/2) eps V(t) P_+ phi
along a trajectory started from eps*phi.
"""
from dataclasses import dataclass
from math import factorial
from typing import Union

import numpy as np

from src.evolution.trajectory import Trajectory
from src.gauge.transform import GaugeArrays, mask, primitive_coeffs
from src.spectral.grid import RealField, SpectralField, coarsen, refine, to_spectral
from src.spectral.norms import sobolev_norm, sobolev_norms
from src.spectral.operators import ProjectionKind, free_symbol, oversampled_size, require_mean_zero

Field = Union[RealField, SpectralField]


@dataclass
class GaugeSeriesCheck:
    series: SpectralField
    exact: SpectralField
    order: int
    eps: float

    @property
    def error(self) -> float:
        return sobolev_norm(self.series - self.exact, 0.0)


def gauge_series(phi: Field, eps: float, order: int) -> GaugeSeriesCheck:
    """Truncated series for P_+(exp(-i eps F/2)) against the pointwise exponential"""
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    g = to_spectral(phi) if isinstance(phi, RealField) else phi
    require_mean_zero(g)
    grid = g.grid
    F = refine(grid, primitive_coeffs(grid, g.coeffs), oversampled_size(grid)).real

    series = np.ones_like(F, dtype=complex)
    power = np.ones_like(F, dtype=complex)
    for k in range(1, order + 1):
        power = power * (-0.5j * eps * F)
        series = series + power / factorial(k)
    exact = np.exp(-0.5j * eps * F)

    plus = mask(grid, ProjectionKind.PLUS)

    def project(values: np.ndarray) -> SpectralField:
        return SpectralField(grid, coarsen(grid, values) * plus)

    return GaugeSeriesCheck(project(series), project(exact), order, eps)


def linear_gauge_defect(traj: Trajectory, phi: Field, eps: float) -> np.ndarray:
    """||w(t) + (i/2) eps V(t) P_+ phi||_{L^2} at every time of a trajectory from eps*phi"""
    g = to_spectral(phi) if isinstance(phi, RealField) else phi
    grid = traj.grid
    arrays = GaugeArrays.from_coefficients(grid, traj.states)
    plus = mask(grid, ProjectionKind.PLUS)
    linear = np.stack([free_symbol(grid, t) for t in traj.times]) * (g.coeffs * plus)
    return sobolev_norms(grid, arrays.w + 0.5j * eps * linear)
