"""
Windowed space-time Fourier transform and Littlewood-Paley blocks

Restriction norms on [0, T] are replaced by norms of the tapered field
psi(t) u(t, x): an upper-bound surrogate with a fixed, published taper.
"""
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property, singledispatch

import numpy as np
import scipy.fft

from config import Config
from src.errors import TimeRangeError
from src.evolution.trajectory import Trajectory
from src.spectral.grid import Grid, SpectralField, inverse_transform, pad_coefficients


class TaperKind(str, Enum):
    BUMP = "bump"
    BOXCAR = "boxcar"


def smoothstep(s: np.ndarray) -> np.ndarray:
    """Quintic smoothstep: 0 at s <= 0, 1 at s >= 1, two continuous derivatives"""
    s = np.clip(s, 0.0, 1.0)
    return s ** 3 * (10.0 - 15.0 * s + 6.0 * s ** 2)


@dataclass(frozen=True)
class TaperSpec:
    """
    Time window psi on [0, T]

    bump: 1 on the middle half [T/4, 3T/4], quintic roll-off to 0 at both ends.
    boxcar: 1 everywhere.
    """
    kind: TaperKind = TaperKind.BUMP

    def __post_init__(self):
        object.__setattr__(self, "kind", TaperKind(self.kind))

    def weights(self, n_times: int) -> np.ndarray:
        if self.kind is TaperKind.BOXCAR or n_times < 2:
            return np.ones(n_times)
        position = np.linspace(0.0, 1.0, n_times)
        rise = smoothstep(4.0 * position)
        fall = smoothstep(4.0 * (1.0 - position))
        return np.minimum(rise, fall)

    def describe(self) -> str:
        if self.kind is TaperKind.BOXCAR:
            return "boxcar on [0, T]"
        return "bump: 1 on [T/4, 3T/4], quintic roll-off to 0 at t = 0 and t = T"


def next_power_of_two(n: int) -> int:
    return 1 << max(0, int(n - 1).bit_length())


@dataclass(frozen=True, eq=False)
class SpaceTimeSpectrum:
    """
    Discrete (tau, xi) transform of a tapered, zero-padded trajectory

    data[m, k] approximates integral exp(-i tau_m t) psi(t) u_hat(t, xi_k) dt with
    tau_m = 2*pi*m/(n_pad*dt) in FFT order. The tau-Nyquist row and the
    xi-Nyquist column are zero.
    """
    grid: Grid
    t0: float
    dt: float
    n_times: int
    data: np.ndarray
    taper: TaperSpec = field(default_factory=TaperSpec)

    def __post_init__(self):
        data = np.array(self.data, dtype=complex)
        n_pad = data.shape[0] if data.ndim == 2 else 0
        if data.ndim != 2 or data.shape[1] != self.grid.n_modes:
            raise ValueError(f"data must have shape (n_pad, {self.grid.n_modes}), got {data.shape}")
        if n_pad < 2 or n_pad & (n_pad - 1):
            raise ValueError(f"padded time length must be a power of two, got {n_pad}")
        data[n_pad // 2, :] = 0.0
        data[:, self.grid.nyquist_index] = 0.0
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @classmethod
    def from_coefficients(
        cls,
        grid: Grid,
        dt: float,
        data: np.ndarray,
        n_times: int = None,
        t0: float = 0.0,
        taper: TaperSpec = None
    ) -> "SpaceTimeSpectrum":
        """Wrap precomputed (tau, xi) data, e.g. synthetic spectra"""
        data = np.asarray(data)
        return cls(grid, t0, dt, n_times or data.shape[0], data, taper or TaperSpec(TaperKind.BOXCAR))

    @property
    def n_pad(self) -> int:
        return self.data.shape[0]

    @cached_property
    def tau(self) -> np.ndarray:
        tau = 2.0 * np.pi * np.fft.fftfreq(self.n_pad, d=self.dt)
        tau.setflags(write=False)
        return tau

    @property
    def tau_step(self) -> float:
        return 2.0 * np.pi / (self.n_pad * self.dt)

    @cached_property
    def sigma(self) -> np.ndarray:
        """Distance to the dispersion surface, tau + xi|xi|, shape (n_pad, M)"""
        xi = self.grid.xi
        sigma = self.tau[:, None] + (xi * np.abs(xi))[None, :]
        sigma.setflags(write=False)
        return sigma

    @property
    def l2_weight(self) -> float:
        """Weight of one (tau, xi) cell in every L^2_{tau, xi} sum"""
        return self.grid.measure / (self.n_pad * self.dt)

    @property
    def tau_l1_weight(self) -> float:
        """d tau / (2 pi) per lattice point"""
        return 1.0 / (self.n_pad * self.dt)

    def with_data(self, data: np.ndarray) -> "SpaceTimeSpectrum":
        return SpaceTimeSpectrum(self.grid, self.t0, self.dt, self.n_times, data, self.taper)

    def conjugate(self) -> "SpaceTimeSpectrum":
        """Spectrum of the pointwise complex conjugate of the windowed field"""
        rows = (-np.arange(self.n_pad)) % self.n_pad
        cols = (-self.grid.wavenumbers) % self.grid.n_modes
        return self.with_data(np.conj(self.data[np.ix_(rows, cols)]))

    def windowed_coefficients(self) -> np.ndarray:
        """Spatial coefficients of psi(t) u(t) on the padded time lattice, shape (n_pad, M)"""
        phase = np.exp(1j * self.tau * self.t0)[:, None]
        return scipy.fft.ifft(self.data * phase, axis=0, workers=Config.FFT_WORKERS) / self.dt

    def windowed_samples(self, oversampling: int = None) -> np.ndarray:
        """Physical samples of psi(t) u(t, x) on a spatially oversampled grid"""
        size = self.grid.n_modes * (oversampling or Config.OVERSAMPLING)
        coeffs = pad_coefficients(self.windowed_coefficients(), size)
        return inverse_transform(coeffs, self.grid.period)


def st_transform(traj: Trajectory, taper: TaperSpec = None) -> SpaceTimeSpectrum:
    """
    Taper in t, zero-pad by Config.TIME_PADDING, then transform in t

    Raises:
        TimeRangeError: If the trajectory holds fewer than Config.MIN_TIME_SAMPLES times
    """
    taper = taper or TaperSpec()
    n_times = len(traj)
    if n_times < Config.MIN_TIME_SAMPLES:
        raise TimeRangeError(
            f"space-time transform needs at least {Config.MIN_TIME_SAMPLES} samples, got {n_times}"
        )
    n_pad = Config.TIME_PADDING * next_power_of_two(n_times)
    windowed = traj.states * taper.weights(n_times)[:, None]
    data = scipy.fft.fft(windowed, n=n_pad, axis=0, workers=Config.FFT_WORKERS)
    tau = 2.0 * np.pi * np.fft.fftfreq(n_pad, d=traj.dt)
    data = traj.dt * np.exp(-1j * tau * traj.t0)[:, None] * data
    return SpaceTimeSpectrum(traj.grid, traj.t0, traj.dt, n_times, data, taper)


# Littlewood-Paley blocks: D_0 = {|xi| <= 2}, D_j = {2^j < |xi| <= 2^{j+1}} for j >= 1

def _edge(j: int) -> float:
    return 2.0 ** j * (1.0 + 1e-12)


def lp_mask(grid: Grid, j: int) -> np.ndarray:
    if j < 0:
        raise ValueError(f"block index must be >= 0, got {j}")
    magnitude = np.abs(grid.xi)
    if j == 0:
        return magnitude <= _edge(1)
    return (magnitude > _edge(j)) & (magnitude <= _edge(j + 1))


def lp_block_count(grid: Grid) -> int:
    """Number of blocks needed to cover every resolved frequency"""
    top = grid.max_frequency
    j = 0
    while 2.0 ** (j + 1) < top:
        j += 1
    return j + 1


@singledispatch
def lp_block(g, j: int):
    raise TypeError(f"lp_block does not apply to {type(g).__name__}")


@lp_block.register
def _(g: SpectralField, j: int) -> SpectralField:
    return SpectralField(g.grid, g.coeffs * lp_mask(g.grid, j), g.real)


@lp_block.register
def _(g: SpaceTimeSpectrum, j: int) -> SpaceTimeSpectrum:
    return g.with_data(g.data * lp_mask(g.grid, j)[None, :])


def spatial_projection(S: SpaceTimeSpectrum, keep: np.ndarray) -> SpaceTimeSpectrum:
    return S.with_data(S.data * keep[None, :])

