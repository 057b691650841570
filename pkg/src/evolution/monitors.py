"""
Conserved-quantity monitors: mean, momentum and both sign choices of the energy
"""
from dataclasses import dataclass
from typing import Dict, List, Union

import numpy as np

from config import Config
from src.evolution.trajectory import Trajectory
from src.spectral.grid import Grid, RealField, SpectralField, refine, to_spectral
from src.spectral.norms import lebesgue_norm
from src.spectral.operators import oversampled_size

Field = Union[RealField, SpectralField]


def _coefficients(u: Field) -> SpectralField:
    return to_spectral(u) if isinstance(u, RealField) else u


def momentum(u: Field) -> float:
    """M(u) = integral of u^2"""
    return lebesgue_norm(u, 2) ** 2


def _energy_parts(grid: Grid, coeffs: np.ndarray) -> np.ndarray:
    """Quadratic part 1/2 int |D^{1/2} u|^2 and cubic integral int u^3, along the last axis"""
    quadratic = 0.5 * grid.measure * np.sum(np.abs(grid.xi) * np.abs(coeffs) ** 2, axis=-1)
    size = oversampled_size(grid)
    fine = refine(grid, coeffs, size).real
    cubic = (grid.period / size) * np.sum(fine ** 3, axis=-1)
    return np.stack([quadratic, cubic], axis=-1)


def energy(u: Field, cubic_sign: int = Config.CONSERVED_CUBIC_SIGN) -> float:
    """E(u) = 1/2 int |D^{1/2} u|^2 + cubic_sign/6 int u^3"""
    if cubic_sign not in (1, -1):
        raise ValueError(f"cubic_sign must be +1 or -1, got {cubic_sign}")
    g = _coefficients(u)
    quadratic, cubic = _energy_parts(g.grid, g.coeffs)
    return float(quadratic + cubic_sign * cubic / 6.0)


@dataclass
class MonitorSeries:
    """Monitor values at every stored time of a trajectory"""
    times: np.ndarray
    mean: np.ndarray
    momentum: np.ndarray
    energy_plus: np.ndarray
    energy_minus: np.ndarray

    def rows(self) -> List[tuple]:
        return list(zip(self.times, self.mean, self.momentum, self.energy_plus, self.energy_minus))

    def drift(self) -> Dict[str, float]:
        """Absolute drift of the mean, relative drift of the other monitors"""

        def relative(series: np.ndarray) -> float:
            scale = abs(series[0])
            spread = float(np.max(np.abs(series - series[0])))
            return spread / scale if scale > 0 else spread

        return {
            "mean": float(np.max(np.abs(self.mean - self.mean[0]))),
            "momentum": relative(self.momentum),
            "energy_plus": relative(self.energy_plus),
            "energy_minus": relative(self.energy_minus),
        }

    def conserved_sign(self) -> int:
        """Cubic sign whose energy drifts least along the series"""
        drift = self.drift()
        return 1 if drift["energy_plus"] < drift["energy_minus"] else -1


def monitor_series(traj: Trajectory) -> MonitorSeries:
    grid = traj.grid
    parts = _energy_parts(grid, traj.states)
    quadratic, cubic = parts[:, 0], parts[:, 1]
    return MonitorSeries(
        times=traj.times,
        mean=traj.states[:, 0].real / grid.period,
        momentum=grid.measure * np.sum(np.abs(traj.states) ** 2, axis=-1),
        energy_plus=quadratic + cubic / 6.0,
        energy_minus=quadratic - cubic / 6.0,
    )
