"""
Fourier multipliers and projections on the torus
Every operator is diagonal in xi, so each returns a new SpectralField
"""
from enum import Enum
from typing import Union

import numpy as np

from config import Config
from src.errors import MeanNotZeroError
from src.spectral.grid import (
    Grid,
    SpectralField,
    check_same_grid,
    inverse_transform,
    pad_coefficients,
    transform,
    truncate_coefficients,
)


class ProjectionKind(str, Enum):
    PLUS = "plus"
    MINUS = "minus"
    ZERO = "zero"
    LE_A = "le_a"
    GT_A = "gt_a"
    STRICT_GT_A = "strict_gt_a"
    STRICT_LT_A = "strict_lt_a"


class FractionalOp(str, Enum):
    DX = "Dx"
    JX = "Jx"


# Projections that map real fields to real fields
_SYMMETRIC_KINDS = {ProjectionKind.ZERO, ProjectionKind.LE_A, ProjectionKind.GT_A}
_THRESHOLD_KINDS = {
    ProjectionKind.LE_A,
    ProjectionKind.GT_A,
    ProjectionKind.STRICT_GT_A,
    ProjectionKind.STRICT_LT_A,
}


def apply_multiplier(g: SpectralField, symbol: np.ndarray, keeps_real: bool) -> SpectralField:
    return SpectralField(g.grid, g.coeffs * symbol, g.real and keeps_real)


def require_mean_zero(g: SpectralField) -> None:
    if abs(g.coeffs[0]) > Config.TOL_MEAN:
        raise MeanNotZeroError(g.coeffs[0], Config.TOL_MEAN)


def projection_mask(grid: Grid, kind: Union[ProjectionKind, str], a: float = 0.0) -> np.ndarray:
    """Boolean mask over FFT-ordered frequencies selected by a projection"""
    kind = ProjectionKind(kind)
    if kind in _THRESHOLD_KINDS and a < 0:
        raise ValueError(f"threshold must be nonnegative, got {a}")
    xi = grid.xi
    tie = 1e-12 * max(1.0, a)
    if kind is ProjectionKind.PLUS:
        return xi > 0
    if kind is ProjectionKind.MINUS:
        return xi < 0
    if kind is ProjectionKind.ZERO:
        return grid.wavenumbers == 0
    if kind is ProjectionKind.LE_A:
        return np.abs(xi) <= a + tie
    if kind is ProjectionKind.GT_A:
        return np.abs(xi) > a + tie
    if kind is ProjectionKind.STRICT_GT_A:
        return xi > a + tie
    return xi < a - tie


def project(g: SpectralField, kind: Union[ProjectionKind, str], a: float = 0.0) -> SpectralField:
    """Apply P_+, P_-, P_0, P_a (le_a), Q_a (gt_a), P_{>a} or P_{<a}"""
    kind = ProjectionKind(kind)
    mask = projection_mask(g.grid, kind, a)
    return apply_multiplier(g, mask.astype(float), kind in _SYMMETRIC_KINDS)


def hilbert(g: SpectralField) -> SpectralField:
    return apply_multiplier(g, -1j * np.sign(g.grid.xi), keeps_real=True)


def derivative(g: SpectralField, order: int = 1) -> SpectralField:
    return apply_multiplier(g, (1j * g.grid.xi) ** order, keeps_real=True)


def antiderivative(g: SpectralField) -> SpectralField:
    """Zero-mean periodic primitive, multiplier 1/(i xi)"""
    require_mean_zero(g)
    xi = g.grid.xi
    symbol = np.zeros_like(xi, dtype=complex)
    nonzero = xi != 0
    symbol[nonzero] = 1.0 / (1j * xi[nonzero])
    return apply_multiplier(g, symbol, keeps_real=True)


def fractional(g: SpectralField, op: Union[FractionalOp, str], alpha: float) -> SpectralField:
    """|xi|^alpha (Dx) or <xi>^alpha (Jx)"""
    op = FractionalOp(op)
    xi = g.grid.xi
    if op is FractionalOp.JX:
        return apply_multiplier(g, (1.0 + xi ** 2) ** (alpha / 2.0), keeps_real=True)
    if alpha < 0:
        require_mean_zero(g)
    abs_xi = np.abs(xi)
    symbol = np.zeros_like(abs_xi)
    nonzero = abs_xi > 0
    symbol[nonzero] = abs_xi[nonzero] ** alpha
    if alpha == 0:
        symbol[~nonzero] = 1.0
    return apply_multiplier(g, symbol, keeps_real=True)


def free_symbol(grid: Grid, t: float) -> np.ndarray:
    xi = grid.xi
    return np.exp(-1j * xi * np.abs(xi) * t)


def free_evolve(g: SpectralField, t: float) -> SpectralField:
    """V(t), the linear Benjamin-Ono group"""
    return apply_multiplier(g, free_symbol(g.grid, t), keeps_real=True)


def padded_size(n_modes: int, factor: float = None) -> int:
    factor = factor or Config.PAD_FACTOR
    return 2 * int(np.ceil(factor * n_modes / 2))


def padded_product_coeffs(
    a: np.ndarray,
    b: np.ndarray,
    period: float,
    factor: float = None,
    real: bool = False
) -> np.ndarray:
    """Coefficients of the product of two coefficient arrays (leading axes broadcast)"""
    m = a.shape[-1]
    size = padded_size(m, factor)
    fa = inverse_transform(pad_coefficients(a, size), period)
    fb = fa if b is a else inverse_transform(pad_coefficients(b, size), period)
    if real:
        fa, fb = fa.real, fb.real
    return truncate_coefficients(transform(fa * fb, period), m)


def pad_product(a: SpectralField, b: SpectralField, factor: float = None) -> SpectralField:
    """
    Product a*b evaluated on a zero-padded grid and truncated back

    With the default 3/2 padding the result is alias-free for inputs whose
    spectra are resolved on the base grid.
    """
    grid = check_same_grid(a.grid, b.grid)
    real = a.real and b.real
    second = a.coeffs if b is a else b.coeffs
    coeffs = padded_product_coeffs(a.coeffs, second, grid.period, factor, real)
    return SpectralField(grid, coeffs, real)


def oversampled_size(grid: Grid, factor: int = None) -> int:
    return grid.n_modes * (factor or Config.OVERSAMPLING)
