"""
Sobolev and Lebesgue norms on the torus.

Measure convention (used by every norm in the repository):

    ||phi||^2_{H^s} := (1 / (2*pi*lambda)) * sum_xi <xi>^{2s} |phi_hat(xi)|^2

with phi_hat(xi) = integral exp(-i xi x) phi(x) dx. This is exact Plancherel,
so H^0 agrees with the L^2 norm computed by quadrature on the samples.
"""
from typing import Union

import numpy as np

from src.spectral.grid import Grid, RealField, SpectralField, synthesize


def sobolev_norm(g: SpectralField, s: float) -> float:
    weight = (1.0 + g.grid.xi ** 2) ** s
    return float(np.sqrt(g.grid.measure * np.sum(weight * np.abs(g.coeffs) ** 2)))


def lebesgue_norm(f: Union[RealField, SpectralField], q: float) -> float:
    """L^q norm by quadrature on the samples; q in {1, 2, 4, inf}"""
    if isinstance(f, SpectralField):
        values, grid = synthesize(f), f.grid
    else:
        values, grid = f.samples, f.grid
    magnitude = np.abs(values)
    if np.isinf(q):
        return float(np.max(magnitude, initial=0.0))
    if q not in (1, 2, 4):
        raise ValueError(f"q must be one of 1, 2, 4, inf; got {q}")
    return float((grid.dx * np.sum(magnitude ** q)) ** (1.0 / q))


def inner_product(f: SpectralField, g: SpectralField) -> complex:
    """<f, g> = integral f * conj(g) dx, evaluated through Plancherel"""
    return complex(f.grid.measure * np.sum(f.coeffs * np.conj(g.coeffs)))


def sobolev_norms(grid: Grid, coeffs: np.ndarray, s: float = 0.0) -> np.ndarray:
    """H^s norm of every row of a (..., M) coefficient array"""
    weight = (1.0 + grid.xi ** 2) ** s
    return np.sqrt(grid.measure * np.sum(weight * np.abs(coeffs) ** 2, axis=-1))
