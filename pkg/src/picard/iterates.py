"""
Picard iterates A_k of the flow-map expansion u = sum_k eps^k A_k(phi)

    A_1(t) = V(t) phi
    A_k(t) = 1/2 sum_{k1 + k2 = k} integral_0^t V(t - t') d_x(A_k1 A_k2)(t') dt'

All orders are marched together in the interaction picture Z_k = V(-t) A_k.
Each output step is split into sub-steps short enough that the fastest
resonant phase advances at most `phase_step` radians, and every sub-step uses
Gauss collocation at the Gauss-Legendre nodes. The rule is explicit: the
forcing of order k at the nodes only needs orders below k at the same nodes.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Tuple, Union

import numpy as np

from config import Config
from src.errors import OrderError, ResolutionError
from src.evolution.duhamel import collocation_matrix, gauss_legendre
from src.evolution.trajectory import SolverConfig, Trajectory, step_count
from src.spectral.grid import Grid, RealField, SpectralField, field_from_function, to_spectral
from src.spectral.operators import padded_product_coeffs, require_mean_zero

logger = logging.getLogger(__name__)

Field = Union[RealField, SpectralField]


@dataclass(frozen=True, eq=False)
class IterateTable:
    """A_1 ... A_K of one initial datum on a shared time lattice"""
    phi: SpectralField
    K: int
    A: Tuple[Trajectory, ...]

    def __getitem__(self, k: int) -> Trajectory:
        if not 1 <= k <= self.K:
            raise OrderError(f"order {k} outside 1..{self.K}")
        return self.A[k - 1]

    @property
    def times(self) -> np.ndarray:
        return self.A[0].times

    def partial_sum(self, eps: float, order: int = None) -> np.ndarray:
        """Coefficients of sum_{k <= order} eps^k A_k at every time"""
        order = order or self.K
        total = np.zeros_like(self.A[0].states)
        for k in range(1, order + 1):
            total = total + eps ** k * self[k].states
        return total


def spectral_radius(g: SpectralField) -> float:
    """Largest |xi| carrying a non-negligible coefficient"""
    magnitude = np.abs(g.coeffs)
    peak = float(np.max(magnitude, initial=0.0))
    if peak == 0.0:
        return 0.0
    support = magnitude > 1e-14 * peak
    return float(np.max(np.abs(g.grid.xi[support])))


def substep_count(radius: float, K: int, dt: float, phase_step: float = None) -> int:
    """Sub-steps per output step so that K^2 b^2 / 2 advances at most phase_step per sub-step"""
    phase_step = phase_step or Config.PICARD_PHASE_STEP
    rate = 0.5 * (K * radius) ** 2
    return max(1, int(np.ceil(rate * dt / phase_step - 1e-12)))


def _check_order(K: int) -> None:
    if K < 1:
        raise OrderError(f"order must be >= 1, got {K}")
    if K > Config.PICARD_MAX_ORDER:
        raise OrderError(f"order {K} exceeds the limit {Config.PICARD_MAX_ORDER}")


def _forcing(grid: Grid, stage: Dict[int, np.ndarray], k: int) -> np.ndarray:
    """d_x of 1/2 sum_{k1 + k2 = k} A_k1 A_k2 at the stage nodes"""
    total = np.zeros_like(stage[1])
    for k1 in range(1, k // 2 + 1):
        k2 = k - k1
        product = padded_product_coeffs(stage[k1], stage[k2], grid.period, real=True)
        total += 0.5 * product if k1 == k2 else product
    return 1j * grid.xi * total


def picard_iterates(
    phi: Field,
    K: int,
    T: float,
    cfg: SolverConfig = None,
    phase_step: float = None
) -> IterateTable:
    """
    Compute A_1 ... A_K on [0, T] at the lattice of cfg.dt

    Args:
        phi: Real mean-zero initial datum
        K: Highest order, at most Config.PICARD_MAX_ORDER
        T: Final time, a multiple of cfg.dt
        cfg: Supplies dt and the number of collocation nodes
        phase_step: Largest resonant phase per sub-step

    Raises:
        OrderError: If K is outside 1..PICARD_MAX_ORDER
        MeanNotZeroError: If phi has nonzero mean
        ResolutionError: If the grid cannot hold the support of A_K
    """
    _check_order(K)
    cfg = cfg or SolverConfig()
    g = to_spectral(phi) if isinstance(phi, RealField) else phi
    require_mean_zero(g)
    grid = g.grid

    radius = spectral_radius(g)
    top_index = int(round(radius * grid.lam))
    if K * top_index >= grid.nyquist_index:
        raise ResolutionError(
            f"A_{K} needs modes up to {K * top_index}, grid M={grid.n_modes} holds {grid.nyquist_index - 1}"
        )

    n_out = step_count(T, cfg.dt)
    n_sub = substep_count(radius, K, cfg.dt, phase_step)
    h = cfg.dt / n_sub
    nodes, weights = gauss_legendre(cfg.quadrature_order)
    collocation = collocation_matrix(cfg.quadrature_order)
    dispersion = grid.xi * np.abs(grid.xi)
    logger.info(f"picard K={K}: {n_out} steps x {n_sub} sub-steps on M={grid.n_modes}")

    Z = np.zeros((K + 1, grid.n_modes), dtype=complex)
    Z[1] = g.coeffs
    out = np.zeros((K + 1, n_out + 1, grid.n_modes), dtype=complex)
    out[1, 0] = g.coeffs

    if K > 1:
        for n in range(n_out):
            for sub in range(n_sub):
                start = (n * n_sub + sub) * h
                forward = np.exp(-1j * np.outer(start + h * nodes, dispersion))
                backward = np.conj(forward)
                stage = {1: forward * Z[1]}
                for k in range(2, K + 1):
                    f = backward * _forcing(grid, stage, k)
                    stage[k] = forward * (Z[k] + h * (collocation @ f))
                    Z[k] = Z[k] + h * (weights @ f)
            out[2:, n + 1] = np.exp(-1j * (n + 1) * cfg.dt * dispersion) * Z[2:]

    times = cfg.dt * np.arange(n_out + 1)
    out[1] = np.exp(-1j * np.outer(times, dispersion)) * g.coeffs
    meta = {"substeps": n_sub, **cfg.as_dict()}
    trajectories = tuple(
        Trajectory(grid, 0.0, cfg.dt, out[k], True, {"order": k, **meta}) for k in range(1, K + 1)
    )
    return IterateTable(SpectralField(grid, g.coeffs, True), K, trajectories)


def closed_form_A(k: int, N: int, t: float, grid: Grid) -> RealField:
    """
    A_k(t, cos(N x)) for k <= 3:

        A_1 = cos(Nx - N^2 t)
        A_2 = [cos(2Nx - 2N^2 t) - cos(2Nx - 4N^2 t)] / (4N)
        A_3 = -(t/8) sin(Nx - N^2 t)
              + [cos(Nx - 3N^2 t) - cos(Nx - N^2 t)] / (16 N^2)
              + [cos(3Nx - 3N^2 t) - cos(3Nx - 9N^2 t)] / (16 N^2)
              - 3 [cos(3Nx - 5N^2 t) - cos(3Nx - 9N^2 t)] / (32 N^2)
    """
    if k not in (1, 2, 3):
        raise OrderError(f"closed forms exist for k = 1, 2, 3; got {k}")
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if abs(N * grid.lam - round(N * grid.lam)) > 1e-12 or k * N >= grid.nyquist_index / grid.lam:
        raise ResolutionError(f"cos({N}x) to order {k} is not representable on {grid}")
    w = N ** 2 * t

    def a1(x):
        return np.cos(N * x - w)

    def a2(x):
        return (np.cos(2 * N * x - 2 * w) - np.cos(2 * N * x - 4 * w)) / (4.0 * N)

    def a3(x):
        c = 1.0 / (16.0 * N ** 2)
        return (
            -(t / 8.0) * np.sin(N * x - w)
            + c * (np.cos(N * x - 3 * w) - np.cos(N * x - w))
            + c * (np.cos(3 * N * x - 3 * w) - np.cos(3 * N * x - 9 * w))
            - 1.5 * c * (np.cos(3 * N * x - 5 * w) - np.cos(3 * N * x - 9 * w))
        )

    return field_from_function(grid, {1: a1, 2: a2, 3: a3}[k])
