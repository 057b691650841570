"""
Duhamel operator  t -> integral_0^t V(t - t') G(t') dt'

The integrand is moved to the interaction picture V(-t')G(t'), interpolated
between lattice samples by a cubic spline and integrated with a composite
Gauss-Legendre rule on every lattice interval.
"""
from functools import lru_cache
from typing import Tuple

import numpy as np
from numpy.polynomial import Polynomial
from numpy.polynomial.legendre import leggauss
from scipy.interpolate import CubicSpline

from config import Config
from src.errors import TimeRangeError
from src.evolution.trajectory import Trajectory
from src.spectral.grid import SpectralField
from src.spectral.operators import free_symbol


@lru_cache(maxsize=None)
def gauss_legendre(order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the Gauss-Legendre rule on [0, 1]"""
    if order < 1:
        raise ValueError(f"quadrature order must be >= 1, got {order}")
    nodes, weights = leggauss(order)
    nodes, weights = 0.5 * (nodes + 1.0), 0.5 * weights
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


@lru_cache(maxsize=None)
def collocation_matrix(order: int) -> np.ndarray:
    """
    Gauss collocation matrix on [0, 1]: entry (i, j) integrates the j-th
    Lagrange basis polynomial of the nodes from 0 to node i
    """
    nodes, _ = gauss_legendre(order)
    matrix = np.empty((order, order))
    for j in range(order):
        others = np.delete(nodes, j)
        basis = Polynomial.fromroots(others) / np.prod(nodes[j] - others)
        primitive = basis.integ()
        matrix[:, j] = primitive(nodes) - primitive(0.0)
    matrix.setflags(write=False)
    return matrix


def interaction_picture(G: Trajectory) -> np.ndarray:
    """Rows V(-t_n) G(t_n)"""
    symbols = np.exp(1j * np.outer(G.times, G.grid.xi * np.abs(G.grid.xi)))
    return G.states * symbols


def duhamel(G: Trajectory, t: float, quadrature_order: int = None) -> SpectralField:
    """
    Evaluate integral_0^t V(t - t') G(t') dt' for a lattice time t

    Args:
        G: Forcing sampled on [0, T]; must start at t = 0
        t: Upper limit, a lattice time of G
        quadrature_order: Gauss-Legendre points per lattice interval

    Returns:
        SpectralField of the integral at time t

    Raises:
        TimeRangeError: If t is outside [0, T] or off the lattice
    """
    order = quadrature_order or Config.QUADRATURE_ORDER
    if abs(G.t0) > 1e-12:
        raise TimeRangeError(f"forcing must start at t=0, got t0={G.t0}")
    index = G.index_of(t)
    grid = G.grid
    if index == 0:
        return SpectralField(grid, np.zeros(grid.n_modes, dtype=complex), G.real)
    if len(G) < 2:
        raise TimeRangeError("forcing needs at least two samples")

    picture = interaction_picture(G)
    m = grid.n_modes
    spline = CubicSpline(G.times, np.concatenate([picture.real, picture.imag], axis=1), axis=0)

    nodes, weights = gauss_legendre(order)
    starts = G.times[:index]
    points = (starts[:, None] + G.dt * nodes[None, :]).ravel()
    samples = spline(points).reshape(index, order, 2 * m)
    integral = G.dt * np.einsum("j,nja->a", weights, samples)
    coeffs = (integral[:m] + 1j * integral[m:]) * free_symbol(grid, t)
    return SpectralField(grid, coeffs, G.real)
