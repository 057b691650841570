"""
Grid and field types for the torus R/2*pi*lambda*Z
Handles sampling, the forward/inverse transform pair and the coefficient convention
"""
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Optional, Union

import numpy as np
import scipy.fft

from config import Config
from src.errors import GridMismatchError


@dataclass(frozen=True)
class Grid:
    """Uniform grid on the torus of period 2*pi*lam with n_modes samples"""
    lam: float
    n_modes: int

    def __post_init__(self):
        if not self.lam >= 1.0:
            raise ValueError(f"lambda must be >= 1, got {self.lam}")
        m = self.n_modes
        if m < 4 or m & (m - 1):
            raise ValueError(f"n_modes must be a power of two >= 4, got {m}")

    @property
    def period(self) -> float:
        return 2.0 * np.pi * self.lam

    @property
    def dx(self) -> float:
        return self.period / self.n_modes

    @property
    def measure(self) -> float:
        """Weight of one frequency in every L2_xi sum: 1/(2*pi*lambda)"""
        return 1.0 / self.period

    @property
    def nyquist_index(self) -> int:
        return self.n_modes // 2

    @cached_property
    def x(self) -> np.ndarray:
        x = self.dx * np.arange(self.n_modes)
        x.setflags(write=False)
        return x

    @cached_property
    def wavenumbers(self) -> np.ndarray:
        """Integer mode index k in FFT order; xi = k / lambda"""
        k = np.fft.fftfreq(self.n_modes, d=1.0 / self.n_modes).round().astype(np.int64)
        k.setflags(write=False)
        return k

    @cached_property
    def xi(self) -> np.ndarray:
        xi = self.wavenumbers / self.lam
        xi.setflags(write=False)
        return xi

    @property
    def max_frequency(self) -> float:
        """Largest resolved |xi| (the Nyquist mode is always dropped)"""
        return (self.nyquist_index - 1) / self.lam


def check_same_grid(*grids: Grid) -> Grid:
    """Return the common grid or raise GridMismatchError"""
    first = grids[0]
    for other in grids[1:]:
        if other != first:
            raise GridMismatchError(f"grid mismatch: {first} vs {other}")
    return first


@dataclass(frozen=True, eq=False)
class RealField:
    """Real samples u(x_j), x_j = 2*pi*lambda*j/M"""
    grid: Grid
    samples: np.ndarray

    def __post_init__(self):
        samples = np.array(self.samples, dtype=float)
        if samples.shape != (self.grid.n_modes,):
            raise ValueError(
                f"expected {self.grid.n_modes} samples, got shape {samples.shape}"
            )
        if not np.all(np.isfinite(samples)):
            raise ValueError("field samples must be finite")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    @property
    def mean(self) -> float:
        return float(np.mean(self.samples))

    @property
    def is_mean_zero(self) -> bool:
        return abs(self.mean * self.grid.period) <= Config.TOL_MEAN

    def __add__(self, other: "RealField") -> "RealField":
        check_same_grid(self.grid, other.grid)
        return RealField(self.grid, self.samples + other.samples)

    def __sub__(self, other: "RealField") -> "RealField":
        check_same_grid(self.grid, other.grid)
        return RealField(self.grid, self.samples - other.samples)

    def __mul__(self, scalar: float) -> "RealField":
        return RealField(self.grid, self.samples * scalar)

    __rmul__ = __mul__

    def shifted(self, constant: float) -> "RealField":
        return RealField(self.grid, self.samples + constant)


@dataclass(frozen=True, eq=False)
class SpectralField:
    """
    Fourier coefficients in FFT order, coeff(xi) = integral of exp(-i xi x) phi(x) dx.

    The Nyquist coefficient is zeroed on construction. `real` marks fields whose
    coefficients satisfy coeff(-xi) = conj(coeff(xi)).
    """
    grid: Grid
    coeffs: np.ndarray
    real: bool = False

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=complex)
        if coeffs.shape != (self.grid.n_modes,):
            raise ValueError(
                f"expected {self.grid.n_modes} coefficients, got shape {coeffs.shape}"
            )
        coeffs[self.grid.nyquist_index] = 0.0
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def mean_coefficient(self) -> complex:
        return complex(self.coeffs[0])

    @property
    def is_mean_zero(self) -> bool:
        return abs(self.coeffs[0]) <= Config.TOL_MEAN

    def with_coeffs(self, coeffs: np.ndarray, real: Optional[bool] = None) -> "SpectralField":
        return SpectralField(self.grid, coeffs, self.real if real is None else real)

    def conj(self) -> "SpectralField":
        """Spectral field of the complex conjugate in physical space"""
        flipped = np.conj(self.coeffs[(-self.grid.wavenumbers) % self.grid.n_modes])
        return SpectralField(self.grid, flipped, self.real)

    def __add__(self, other: "SpectralField") -> "SpectralField":
        check_same_grid(self.grid, other.grid)
        return SpectralField(self.grid, self.coeffs + other.coeffs, self.real and other.real)

    def __sub__(self, other: "SpectralField") -> "SpectralField":
        check_same_grid(self.grid, other.grid)
        return SpectralField(self.grid, self.coeffs - other.coeffs, self.real and other.real)

    def __mul__(self, scalar: Union[float, complex]) -> "SpectralField":
        keeps_real = self.real and np.isreal(scalar)
        return SpectralField(self.grid, self.coeffs * scalar, bool(keeps_real))

    __rmul__ = __mul__

    def __neg__(self) -> "SpectralField":
        return SpectralField(self.grid, -self.coeffs, self.real)


def zeros(grid: Grid) -> SpectralField:
    return SpectralField(grid, np.zeros(grid.n_modes, dtype=complex), real=True)


def _fft(values: np.ndarray, axis: int = -1) -> np.ndarray:
    return scipy.fft.fft(values, axis=axis, workers=Config.FFT_WORKERS)


def _ifft(coeffs: np.ndarray, axis: int = -1) -> np.ndarray:
    return scipy.fft.ifft(coeffs, axis=axis, workers=Config.FFT_WORKERS)


def transform(values: np.ndarray, period: float) -> np.ndarray:
    """Coefficients along the last axis of samples taken on a uniform grid of `period`"""
    return _fft(values) * (period / values.shape[-1])


def inverse_transform(coeffs: np.ndarray, period: float) -> np.ndarray:
    """Complex samples along the last axis; inverse of transform()"""
    return _ifft(coeffs) * (coeffs.shape[-1] / period)


def analyze(grid: Grid, values: np.ndarray, real: Optional[bool] = None) -> SpectralField:
    """Transform physical samples (real or complex) into a SpectralField"""
    values = np.asarray(values)
    if real is None:
        real = not np.iscomplexobj(values)
    return SpectralField(grid, grid.dx * _fft(values), real)


def synthesize(g: SpectralField) -> np.ndarray:
    """Complex physical samples of a spectral field"""
    return _ifft(g.coeffs) / g.grid.dx


def to_spectral(f: RealField) -> SpectralField:
    return analyze(f.grid, f.samples, real=True)


def to_physical(g: SpectralField) -> RealField:
    values = synthesize(g)
    scale = float(np.max(np.abs(values))) if values.size else 0.0
    if not g.real and np.max(np.abs(values.imag), initial=0.0) > 1e-10 * max(scale, 1.0):
        raise ValueError("field is complex-valued; use synthesize() for its samples")
    return RealField(g.grid, values.real)


def pad_coefficients(coeffs: np.ndarray, size: int) -> np.ndarray:
    """Embed FFT-ordered coefficients of length M into a longer FFT-ordered array"""
    m = coeffs.shape[-1]
    half = m // 2
    out = np.zeros(coeffs.shape[:-1] + (size,), dtype=complex)
    out[..., :half] = coeffs[..., :half]
    out[..., size - half + 1:] = coeffs[..., half + 1:]
    return out


def truncate_coefficients(coeffs: np.ndarray, size: int) -> np.ndarray:
    """Keep the modes |k| < size/2 of a longer FFT-ordered array"""
    n = coeffs.shape[-1]
    half = size // 2
    out = np.zeros(coeffs.shape[:-1] + (size,), dtype=complex)
    out[..., :half] = coeffs[..., :half]
    out[..., half + 1:] = coeffs[..., n - half + 1:]
    return out


def refine(grid: Grid, coeffs: np.ndarray, size: int) -> np.ndarray:
    """Complex samples on a uniform grid of `size` points (trigonometric interpolation), over leading axes"""
    return inverse_transform(pad_coefficients(coeffs, size), grid.period)


def coarsen(grid: Grid, fine_values: np.ndarray) -> np.ndarray:
    """Coefficients of samples taken on a finer grid, keeping the modes `grid` resolves"""
    return truncate_coefficients(transform(fine_values, grid.period), grid.n_modes)


def field_from_function(grid: Grid, func: Callable[[np.ndarray], np.ndarray]) -> RealField:
    return RealField(grid, func(np.asarray(grid.x)))


def random_band_limited(
    grid: Grid,
    band: int,
    rng: np.random.Generator,
    amplitude: float = 1.0,
    mean_zero: bool = True
) -> RealField:
    """
    Real field with Gaussian Fourier coefficients on the modes 1 <= |k| <= band

    Args:
        grid: Target grid
        band: Largest integer mode index kept
        rng: Generator supplying the coefficients
        amplitude: Root-mean-square value of the result
        mean_zero: Whether the k = 0 mode stays empty

    Returns:
        RealField with the requested RMS amplitude
    """
    if not 1 <= band < grid.nyquist_index:
        raise ValueError(f"band must lie in [1, {grid.nyquist_index - 1}], got {band}")
    coeffs = np.zeros(grid.n_modes, dtype=complex)
    positive = rng.standard_normal(band) + 1j * rng.standard_normal(band)
    coeffs[1:band + 1] = positive
    coeffs[-band:] = np.conj(positive[::-1])
    if not mean_zero:
        coeffs[0] = rng.standard_normal()
    samples = _ifft(coeffs).real
    rms = np.sqrt(np.mean(samples ** 2))
    return RealField(grid, amplitude * samples / rms)
