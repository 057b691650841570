"""
Dilation symmetry u_beta(t, x) = beta^{-1} u(beta^{-2} t, beta^{-1} x)

On the dilated torus of period 2*pi*lambda*beta the mode index k carries
frequency k/(lambda*beta), so a dilation by beta leaves the coefficient array
unchanged up to the factor beta^{1-p} of an amplitude power p.
"""
import numpy as np

from src.errors import ResolutionError
from src.evolution.trajectory import Trajectory
from src.spectral.grid import Grid, SpectralField, pad_coefficients, truncate_coefficients

# Relative amplitude a dropped mode may carry when the target grid is coarser
_DROP_TOLERANCE = 1e-12


def _check_beta(beta: float) -> None:
    if not beta >= 1.0:
        raise ValueError(f"beta must be >= 1, got {beta}")


def _resample(coeffs: np.ndarray, n_modes: int) -> np.ndarray:
    m = coeffs.shape[-1]
    if n_modes == m:
        return coeffs
    if n_modes > m:
        return pad_coefficients(coeffs, n_modes)
    kept = truncate_coefficients(coeffs, n_modes)
    dropped = np.sum(np.abs(coeffs) ** 2) - np.sum(np.abs(kept) ** 2)
    total = np.sum(np.abs(coeffs) ** 2)
    if dropped > _DROP_TOLERANCE ** 2 * max(total, 1e-300):
        raise ResolutionError(
            f"target grid with M={n_modes} cannot hold the support of an M={m} field"
        )
    return kept


def dilate_field(
    g: SpectralField,
    beta: float,
    amplitude_power: float = 1.0,
    n_modes: int = None
) -> SpectralField:
    """f_beta(x) = beta^{-amplitude_power} f(x / beta) on the torus of period beta times larger"""
    _check_beta(beta)
    target = Grid(lam=g.grid.lam * beta, n_modes=n_modes or g.grid.n_modes)
    coeffs = _resample(g.coeffs * beta ** (1.0 - amplitude_power), target.n_modes)
    return SpectralField(target, coeffs, g.real)


def dilate(u: Trajectory, beta: float, n_modes: int = None) -> Trajectory:
    """
    Rescale a trajectory to the torus of period 2*pi*lambda*beta

    Raises:
        ResolutionError: If n_modes is too small for the support of u
    """
    _check_beta(beta)
    if beta == 1.0 and n_modes in (None, u.grid.n_modes):
        return u
    target = Grid(lam=u.grid.lam * beta, n_modes=n_modes or u.grid.n_modes)
    states = _resample(u.states, target.n_modes)
    meta = {**u.meta, "dilation": beta}
    return Trajectory(target, u.t0 * beta ** 2, u.dt * beta ** 2, states, u.real, meta)
