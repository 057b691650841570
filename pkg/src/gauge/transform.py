"""
Gauge transform W = P_+(exp(-iF/2)), F = primitive of u, and its algebraic identities

Exponentials are evaluated pointwise on a grid oversampled by
Config.OVERSAMPLING; products that carry an exponential factor are formed on
the same oversampled grid and truncated back.
"""
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Union

import numpy as np

from config import Config
from src.evolution.symmetry import dilate_field
from src.spectral.grid import (
    Grid,
    RealField,
    SpectralField,
    check_same_grid,
    coarsen,
    refine,
    to_physical,
    to_spectral,
)
from src.spectral.norms import lebesgue_norm, sobolev_norm
from src.spectral.operators import (
    ProjectionKind,
    antiderivative,
    oversampled_size,
    padded_product_coeffs,
    projection_mask,
    require_mean_zero,
)

Field = Union[RealField, SpectralField]


# Array kernels, vectorized over leading (time) axes

def primitive_coeffs(grid: Grid, u: np.ndarray) -> np.ndarray:
    xi = grid.xi
    symbol = np.zeros(grid.n_modes, dtype=complex)
    nonzero = xi != 0
    symbol[nonzero] = 1.0 / (1j * xi[nonzero])
    return u * symbol


def exponential_coeffs(grid: Grid, F: np.ndarray, sign: float = -1.0) -> np.ndarray:
    """Coefficients of exp(sign * i F / 2) for real F, truncated to the grid"""
    fine = refine(grid, F, oversampled_size(grid)).real
    return coarsen(grid, np.exp(sign * 0.5j * fine))


def conjugate_coeffs(grid: Grid, c: np.ndarray) -> np.ndarray:
    """Coefficients of the pointwise complex conjugate"""
    return np.conj(c[..., (-grid.wavenumbers) % grid.n_modes])


def fine_product(grid: Grid, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return padded_product_coeffs(a, b, grid.period, factor=Config.OVERSAMPLING)


def mask(grid: Grid, kind: ProjectionKind, a: float = 0.0) -> np.ndarray:
    return projection_mask(grid, kind, a).astype(float)


@dataclass(frozen=True, eq=False)
class GaugeArrays:
    """u, F, exp(-iF/2), W and w as coefficient arrays of shape (..., M)"""
    grid: Grid
    u: np.ndarray
    F: np.ndarray
    factor: np.ndarray
    W: np.ndarray
    w: np.ndarray

    @classmethod
    def from_coefficients(cls, grid: Grid, u: np.ndarray) -> "GaugeArrays":
        F = primitive_coeffs(grid, u)
        factor = exponential_coeffs(grid, F)
        W = factor * mask(grid, ProjectionKind.PLUS)
        w = 1j * grid.xi * W
        return cls(grid, u, F, factor, W, w)

    @property
    def inverse_factor(self) -> np.ndarray:
        """Coefficients of exp(+iF/2)"""
        return conjugate_coeffs(self.grid, self.factor)

    def without_roundoff_modes(self) -> "GaugeArrays":
        """
        Zero the modes of exp(-iF/2) that stay at FFT roundoff over every time

        The mode set is fixed across the leading axes so the time stencils see
        no switching; W and w are rebuilt from the cleaned factor.
        """
        magnitude = np.abs(self.factor).reshape(-1, self.grid.n_modes)
        cutoff = np.finfo(float).eps * float(np.max(magnitude, initial=0.0))
        keep = np.max(magnitude, axis=0) > cutoff
        factor = self.factor * keep
        W = factor * mask(self.grid, ProjectionKind.PLUS)
        return GaugeArrays(self.grid, self.u, self.F, factor, W, 1j * self.grid.xi * W)


@dataclass(frozen=True, eq=False)
class GaugeBundle:
    """
    Matched (u, F, W, w) on one grid

    F = primitive of u, W = P_+(exp(-iF/2)), w = d_x W = -(i/2) P_+(exp(-iF/2) u)
    """
    u: RealField
    F: RealField
    W: SpectralField
    w: SpectralField

    def __post_init__(self):
        check_same_grid(self.u.grid, self.F.grid, self.W.grid, self.w.grid)

    @property
    def grid(self) -> Grid:
        return self.u.grid

    @cached_property
    def factor(self) -> SpectralField:
        """exp(-iF/2) on the grid"""
        F = to_spectral(self.F).coeffs
        return SpectralField(self.grid, exponential_coeffs(self.grid, F))

    def w_from_product(self) -> SpectralField:
        """The second expression for w, -(i/2) P_+(exp(-iF/2) u)"""
        grid = self.grid
        product = fine_product(grid, self.factor.coeffs, to_spectral(self.u).coeffs)
        return SpectralField(grid, -0.5j * product * mask(grid, ProjectionKind.PLUS))


def make_gauge(u: Field) -> GaugeBundle:
    """
    Build the gauge bundle of a real mean-zero field

    Raises:
        MeanNotZeroError: If the mean of u exceeds the tolerance
    """
    g = to_spectral(u) if isinstance(u, RealField) else u
    require_mean_zero(g)
    grid = g.grid
    arrays = GaugeArrays.from_coefficients(grid, g.coeffs)
    return GaugeBundle(
        u=to_physical(SpectralField(grid, g.coeffs, True)),
        F=to_physical(antiderivative(SpectralField(grid, g.coeffs, True))),
        W=SpectralField(grid, arrays.W),
        w=SpectralField(grid, arrays.w),
    )


def _inversion_terms(grid: Grid, F: np.ndarray):
    factor = exponential_coeffs(grid, F)
    inverse = conjugate_coeffs(grid, factor)
    minus_part = 1j * grid.xi * factor * mask(grid, ProjectionKind.MINUS)
    return inverse, minus_part


def invert_gauge(b: GaugeBundle) -> RealField:
    """u = 2i exp(iF/2) w + 2i exp(iF/2) d_x P_-(exp(-iF/2))"""
    grid = b.grid
    F = to_spectral(b.F).coeffs
    inverse, minus_part = _inversion_terms(grid, F)
    coeffs = 2j * fine_product(grid, inverse, b.w.coeffs + minus_part)
    return to_physical(SpectralField(grid, coeffs, True))


def check_highmode_inversion(u: Field) -> float:
    """L^2 residual of P_{>1} u = 2i P_{>1}(exp(iF/2) w) + 2i P_{>1}(P_{>1}(exp(iF/2)) d_x P_-(exp(-iF/2)))"""
    b = make_gauge(u)
    grid = b.grid
    F = to_spectral(b.F).coeffs
    inverse, minus_part = _inversion_terms(grid, F)
    high = mask(grid, ProjectionKind.STRICT_GT_A, 1.0)
    rhs = 2j * high * (
        fine_product(grid, inverse, b.w.coeffs)
        + fine_product(grid, inverse * high, minus_part)
    )
    lhs = high * to_spectral(b.u).coeffs
    return sobolev_norm(SpectralField(grid, lhs - rhs), 0.0)


def check_negative_mode_identity(u: Field) -> float:
    """L^2 residual of P_-(u) = -2i P_-(exp(-iF/2) conj(w)) - 2i P_-(exp(-iF/2) d_x P_+(exp(iF/2)))"""
    b = make_gauge(u)
    grid = b.grid
    minus = mask(grid, ProjectionKind.MINUS)
    factor = b.factor.coeffs
    inverse = conjugate_coeffs(grid, factor)
    w_bar = conjugate_coeffs(grid, b.w.coeffs)
    d_plus = 1j * grid.xi * inverse * mask(grid, ProjectionKind.PLUS)
    rhs = -2j * minus * (fine_product(grid, factor, w_bar) + fine_product(grid, factor, d_plus))
    lhs = minus * to_spectral(b.u).coeffs
    return sobolev_norm(SpectralField(grid, lhs - rhs), 0.0)


@dataclass
class LipschitzCheck:
    """Both sides of the chain |e^{-iF1/2} - e^{-iF2/2}| <= |F1 - F2|/2 <= C(lambda) ||u1 - u2||"""
    exponential_gap: float
    half_primitive_gap: float
    l2_distance: float
    constant: float

    @property
    def ratio(self) -> float:
        return self.exponential_gap / self.l2_distance if self.l2_distance > 0 else 0.0

    @property
    def bound(self) -> float:
        return self.constant * self.l2_distance

    @property
    def holds(self) -> bool:
        slack = 1e-12 * max(1.0, self.bound)
        return (self.exponential_gap <= self.half_primitive_gap + slack
                and self.half_primitive_gap <= self.bound + slack)


def lipschitz_constant(lam: float) -> float:
    """C(lambda) = sqrt(pi * lambda / 6) / 2"""
    return 0.5 * np.sqrt(np.pi * lam / 6.0)


def lipschitz_ratio(u1: Field, u2: Field) -> LipschitzCheck:
    g1 = to_spectral(u1) if isinstance(u1, RealField) else u1
    g2 = to_spectral(u2) if isinstance(u2, RealField) else u2
    grid = check_same_grid(g1.grid, g2.grid)
    require_mean_zero(g1)
    require_mean_zero(g2)
    size = oversampled_size(grid)
    F1 = refine(grid, primitive_coeffs(grid, g1.coeffs), size).real
    F2 = refine(grid, primitive_coeffs(grid, g2.coeffs), size).real
    return LipschitzCheck(
        exponential_gap=float(np.max(np.abs(np.exp(-0.5j * F1) - np.exp(-0.5j * F2)))),
        half_primitive_gap=0.5 * float(np.max(np.abs(F1 - F2))),
        l2_distance=lebesgue_norm(g1 - g2, 2),
        constant=lipschitz_constant(grid.lam),
    )


def dilate_bundle(u: Field, beta: float) -> Dict[str, float]:
    """
    Compare the gauge of the dilated field with the dilated gauge

    F and W dilate with amplitude power 0, u and w with power 1. Returns the
    L^2 mismatch of each component on the dilated torus.
    """
    g = to_spectral(u) if isinstance(u, RealField) else u
    direct = make_gauge(dilate_field(SpectralField(g.grid, g.coeffs, True), beta))
    original = make_gauge(g)
    pairs = {
        "F": (to_spectral(direct.F), dilate_field(to_spectral(original.F), beta, 0.0)),
        "W": (direct.W, dilate_field(original.W, beta, 0.0)),
        "w": (direct.w, dilate_field(original.w, beta, 1.0)),
    }
    return {name: sobolev_norm(a - b, 0.0) for name, (a, b) in pairs.items()}
