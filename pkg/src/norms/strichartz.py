"""
Monte-Carlo probe of the L^4 <= C X^{3/8,0} estimate

Each sample is a complex random field
    v(t, x) = sum_{k, m} c_{k,m} exp(i(xi_k x - xi_k|xi_k| t + sigma_m t))
with |k| <= band, sigma_m = 2*pi*m/T, |sigma_m| <= sigma_band and standard complex
Gaussian c_{k,m}, sampled on the fixed window [0, T). Sample i draws from a
Philox generator keyed by (seed, i), so any subset of samples can be
regenerated independently of the others.
"""
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Sequence

import numpy as np

from src.artifacts import PathLike, write_csv, write_json
from src.evolution.trajectory import Trajectory
from src.norms.bourgain import NormFamily, bourgain_norm, lebesgue_st_norm
from src.norms.spectrum import SpaceTimeSpectrum, TaperSpec, st_transform
from src.spectral.grid import Grid

logger = logging.getLogger(__name__)

DEFAULT_QUANTILES = (0.5, 0.9, 0.99)


def sample_generator(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, index])))


def strichartz_quotient(S: SpaceTimeSpectrum) -> float:
    """||v||_{L^4} / ||v||_{X^{3/8,0}} of one windowed field"""
    denominator = bourgain_norm(S, NormFamily.X, b=0.375, s=0.0)
    if denominator == 0:
        return 0.0
    return lebesgue_st_norm(S, 4) / denominator


def random_field(
    grid: Grid,
    n_times: int,
    rng: np.random.Generator,
    band: int = 8,
    sigma_band: float = 16.0,
    T: float = 1.0
) -> Trajectory:
    """One random modulated free-wave field on [0, T) as a complex trajectory"""
    if not 1 <= band < grid.nyquist_index:
        raise ValueError(f"band must lie in [1, {grid.nyquist_index - 1}], got {band}")
    dt = T / n_times
    times = dt * np.arange(n_times)
    k = np.arange(-band, band + 1)
    xi = k / grid.lam
    m_max = int(np.floor(sigma_band * T / (2.0 * np.pi)))
    sigma = 2.0 * np.pi * np.arange(-m_max, m_max + 1) / T

    c = (rng.standard_normal((k.size, sigma.size))
         + 1j * rng.standard_normal((k.size, sigma.size))) / np.sqrt(2.0)
    # modulation sum over m for every time, then the free phase per mode
    modulation = np.exp(1j * np.outer(times, sigma)) @ c.T
    free = np.exp(-1j * np.outer(times, xi * np.abs(xi)))
    states = np.zeros((n_times, grid.n_modes), dtype=complex)
    states[:, k % grid.n_modes] = grid.period * modulation * free
    return Trajectory(grid, 0.0, dt, states, real=False, meta={"band": band, "sigma_band": sigma_band})


@dataclass
class StrichartzResult:
    ratios: np.ndarray
    seed: int
    quantiles: Dict[float, float]

    @property
    def max_ratio(self) -> float:
        return float(np.max(self.ratios))

    def summary(self) -> Dict[str, object]:
        return {
            "sample_count": int(self.ratios.size),
            "seed": self.seed,
            "max_ratio": self.max_ratio,
            "quantiles": {str(q): float(v) for q, v in self.quantiles.items()},
        }

    def to_csv(self, path: PathLike) -> Path:
        return write_csv(path, ("sample_id", "ratio"), enumerate(self.ratios))

    def to_json(self, path: PathLike) -> Path:
        return write_json(path, self.summary())


def strichartz_ratio(
    sample_count: int,
    seed: int,
    grid: Grid,
    n_times: int,
    window: TaperSpec = None,
    band: int = 8,
    sigma_band: float = 16.0,
    T: float = 1.0,
    quantiles: Sequence[float] = DEFAULT_QUANTILES
) -> StrichartzResult:
    """
    Empirical distribution of ||v||_{L^4} / ||v||_{X^{3/8,0}} over random fields

    Deterministic given seed; sample i only depends on (seed, i).
    """
    if sample_count < 1:
        raise ValueError(f"sample_count must be >= 1, got {sample_count}")
    window = window or TaperSpec()
    ratios = np.empty(sample_count)
    for i in range(sample_count):
        traj = random_field(grid, n_times, sample_generator(seed, i), band, sigma_band, T)
        ratios[i] = strichartz_quotient(st_transform(traj, window))
    logger.info(f"strichartz probe: {sample_count} samples, max ratio {np.max(ratios):.6g}")
    return StrichartzResult(
        ratios=ratios,
        seed=seed,
        quantiles={q: float(np.quantile(ratios, q)) for q in quantiles},
    )
