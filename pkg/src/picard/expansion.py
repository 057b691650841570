"""
Uses of the iterate table: truncated series against the solver, and the
third-iterate growth sweep over Psi_N = N^{-s} cos(N x)
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import List, Sequence, Union

import numpy as np

from src.artifacts import PathLike, write_csv
from src.errors import ResolutionError
from src.evolution.solver import evolve
from src.evolution.trajectory import SolverConfig
from src.norms.spectrum import next_power_of_two
from src.picard.iterates import Field, IterateTable, closed_form_A, picard_iterates
from src.spectral.grid import Grid, RealField, field_from_function, to_spectral
from src.spectral.norms import sobolev_norm, sobolev_norms

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ("N", "norm_psi", "norm_A3", "ratio", "eps_N")
ERROR_COLUMNS = ("t", "error")


@dataclass
class ErrorCurve:
    """||evolve(eps phi)(t) - sum_{k <= K} eps^k A_k(t)||_{H^s} per time"""
    times: np.ndarray
    errors: np.ndarray
    eps: float
    K: int
    s: float = 0.0

    @property
    def max_error(self) -> float:
        return float(np.max(self.errors))

    def to_csv(self, path: PathLike) -> Path:
        return write_csv(path, ERROR_COLUMNS, zip(self.times, self.errors))


def series_vs_solver(
    phi: Field,
    eps: float,
    K: int,
    T: float,
    cfg: SolverConfig = None,
    s: float = 0.0,
    table: IterateTable = None
) -> ErrorCurve:
    """
    Compare the solver started from eps*phi with the order-K partial sum

    A precomputed table for (phi, K, T, cfg.dt) may be passed to reuse it
    across several eps.

    Raises:
        BlowupError: Propagated from the solver
    """
    cfg = cfg or SolverConfig()
    g = to_spectral(phi) if isinstance(phi, RealField) else phi
    if table is None:
        table = picard_iterates(g, K, T, cfg)
    traj = evolve(g * eps, T, cfg)
    difference = traj.states - table.partial_sum(eps, K)
    return ErrorCurve(traj.times, sobolev_norms(g.grid, difference, s), eps, K, s)


def fit_order(eps_values: Sequence[float], errors: Sequence[float]) -> float:
    """Least-squares slope of log(error) against log(eps)"""
    slope, _ = np.polyfit(np.log(eps_values), np.log(errors), 1)
    return float(slope)


class SweepMethod(str, Enum):
    RECURSION = "recursion"
    CLOSED_FORM = "closed_form"


@dataclass
class SweepRow:
    N: int
    norm_psi: float
    norm_A3: float
    ratio: float
    eps_N: float

    def as_tuple(self) -> tuple:
        return (self.N, self.norm_psi, self.norm_A3, self.ratio, self.eps_N)


@dataclass
class SweepTable:
    s: float
    t: float
    method: str
    rows: List[SweepRow] = field(default_factory=list)

    @property
    def ratios(self) -> np.ndarray:
        return np.array([row.ratio for row in self.rows])

    def spread(self) -> float:
        """Largest relative deviation of r_N from the value at the largest N"""
        ratios = self.ratios
        reference = ratios[int(np.argmax([row.N for row in self.rows]))]
        return float(np.max(np.abs(ratios / reference - 1.0)))

    def to_csv(self, path: PathLike) -> Path:
        return write_csv(path, SWEEP_COLUMNS, (row.as_tuple() for row in self.rows))


def sweep_grid(N: int, policy: Union[str, int], lam: float = 1.0) -> Grid:
    """per_n: M = next power of two >= 8N; an integer policy fixes M for every N"""
    if policy == "per_n":
        return Grid(lam=lam, n_modes=next_power_of_two(8 * N))
    return Grid(lam=lam, n_modes=int(policy))


def select_eps(N: int, s: float, t: float, eps0: float, C_K: float, C: float, K: int) -> float:
    """eps_N = min(eps0/2, t/(4 C_K), (t N^s / (4 C))^{1/K})"""
    return float(min(eps0 / 2.0, t / (4.0 * C_K), (t * N ** s / (4.0 * C)) ** (1.0 / K)))


def illposed_sweep(
    s: float,
    t: float,
    N_list: Sequence[int],
    grid_policy: Union[str, int] = "per_n",
    method: Union[SweepMethod, str] = SweepMethod.RECURSION,
    eps0: float = 0.5,
    C_K: float = 1.0,
    C: float = 1.0,
    K: int = 4,
    lam: float = 1.0,
    cfg: SolverConfig = None,
    phase_step: float = 1.0
) -> SweepTable:
    """
    r_N = ||A_3(t, Psi_N)||_{H^s} / (t N^{-2s} ||Psi_N||^3_{H^s}) for every N

    Raises:
        ResolutionError: If some N exceeds M/4 or A_3's 3N modes do not fit the grid
    """
    if s > 0:
        raise ValueError(f"the sweep is defined for s <= 0, got {s}")
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    method = SweepMethod(method)
    cfg = cfg or SolverConfig()
    table = SweepTable(s=s, t=t, method=method.value)

    for N in N_list:
        grid = sweep_grid(N, grid_policy, lam)
        if 4 * N > grid.n_modes or 3 * N * grid.lam >= grid.nyquist_index:
            raise ResolutionError(f"N={N} does not fit a sweep grid with M={grid.n_modes}")
        amplitude = float(N) ** (-s)
        psi = field_from_function(grid, lambda x: amplitude * np.cos(N * x))

        if method is SweepMethod.CLOSED_FORM:
            a3 = to_spectral(closed_form_A(3, N, t, grid)) * amplitude ** 3
        else:
            one_step = SolverConfig(dt=t, quadrature_order=cfg.quadrature_order)
            iterates = picard_iterates(psi, 3, t, one_step, phase_step)
            a3 = iterates[3].state(len(iterates[3]) - 1)

        norm_psi = sobolev_norm(to_spectral(psi), s)
        norm_a3 = sobolev_norm(a3, s)
        ratio = norm_a3 / (t * float(N) ** (-2.0 * s) * norm_psi ** 3)
        eps_n = select_eps(N, s, t, eps0, C_K, C, K)
        table.rows.append(SweepRow(N, norm_psi, norm_a3, ratio, eps_n))
        logger.info(f"sweep N={N}: ratio {ratio:.6g} (M={grid.n_modes}, {method.value})")

    return table
