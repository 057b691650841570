"""
Bourgain-type norms of a SpaceTimeSpectrum

Measures: L^2 sums carry l2_weight per (tau, xi) cell (exact Plancherel in
both variables); L^1_tau sums carry d tau/(2 pi); L^2_xi and L^1_xi sums
carry 1/(2 pi lambda). With these choices sup_t ||psi u(t)||_{H^s} <= Z^{0,s}
and sup |psi u| <= A^0 hold with constant 1.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, Union

import numpy as np

from src.errors import NormParameterError
from src.norms.spectrum import SpaceTimeSpectrum, lp_block, lp_block_count, spatial_projection
from src.spectral.norms import sobolev_norms
from src.spectral.operators import ProjectionKind, projection_mask

logger = logging.getLogger(__name__)

PARAMETER_RANGE = (-2.0, 2.0)
SURROGATE_NOTE = (
    "windowed-field surrogate: norms of psi(t) u on the sampled window, an upper "
    "bound for the restriction norm"
)


class NormFamily(str, Enum):
    X = "X"
    XDOT = "Xdot"
    Z = "Z"
    A = "A"
    Y = "Y"
    L4TILDE = "L4tilde"
    N = "N"
    MS = "Ms"


# Which of (b, s) each family takes
_PARAMETERS = {
    NormFamily.X: (True, True),
    NormFamily.XDOT: (True, True),
    NormFamily.Z: (True, True),
    NormFamily.A: (True, False),
    NormFamily.Y: (False, True),
    NormFamily.L4TILDE: (False, False),
    NormFamily.N: (False, False),
    NormFamily.MS: (False, True),
}


def japanese(x: np.ndarray) -> np.ndarray:
    return np.sqrt(1.0 + x ** 2)


def _homogeneous_weight(x: np.ndarray, power: float, zero_value: float) -> np.ndarray:
    magnitude = np.abs(x)
    out = np.full(magnitude.shape, zero_value)
    nonzero = magnitude > 0
    out[nonzero] = magnitude[nonzero] ** power
    return out


def x_norm(S: SpaceTimeSpectrum, b: float, s: float) -> float:
    weight = japanese(S.sigma) ** b * japanese(S.grid.xi)[None, :] ** s
    return float(np.sqrt(S.l2_weight * np.sum((weight * np.abs(S.data)) ** 2)))


def xdot_norm(S: SpaceTimeSpectrum, b: float, s: float) -> float:
    """|sigma|^b |xi|^s; the sigma = 0 plane contributes nothing"""
    xi = S.grid.xi
    on_surface = np.abs(S.sigma) <= 1e-12 * np.maximum(1.0, xi ** 2)[None, :]
    sigma_weight = _homogeneous_weight(S.sigma, b, 0.0)
    sigma_weight[on_surface] = 0.0
    xi_weight = _homogeneous_weight(xi, s, 1.0 if s == 0 else 0.0)
    weight = sigma_weight * xi_weight[None, :]
    return float(np.sqrt(S.l2_weight * np.sum((weight * np.abs(S.data)) ** 2)))


def z_norm(S: SpaceTimeSpectrum, b: float, s: float) -> float:
    """L^2_xi L^1_tau"""
    inner = S.tau_l1_weight * np.sum(japanese(S.sigma) ** b * np.abs(S.data), axis=0)
    weight = japanese(S.grid.xi) ** s
    return float(np.sqrt(S.grid.measure * np.sum((weight * inner) ** 2)))


def a_norm(S: SpaceTimeSpectrum, b: float) -> float:
    """L^1_{tau, xi}"""
    total = np.sum(japanese(S.sigma) ** b * np.abs(S.data))
    return float(S.tau_l1_weight * S.grid.measure * total)


def y_norm(S: SpaceTimeSpectrum, s: float) -> float:
    return x_norm(S, 0.5, s) + z_norm(S, 0.0, s)


def lebesgue_st_norm(S: SpaceTimeSpectrum, q: float = 4) -> float:
    """L^q_{t, lambda} of the windowed field by quadrature on an oversampled grid"""
    samples = S.windowed_samples()
    cell = S.dt * S.grid.period / samples.shape[-1]
    magnitude = np.abs(samples)
    if np.isinf(q):
        return float(np.max(magnitude, initial=0.0))
    return float((cell * np.sum(magnitude ** q)) ** (1.0 / q))


def l4tilde_norm(S: SpaceTimeSpectrum) -> float:
    """(sum_j ||Delta_j u||^2_{L^4})^{1/2} over sharp dyadic blocks"""
    blocks = [lebesgue_st_norm(lp_block(S, j), 4) for j in range(lp_block_count(S.grid))]
    return float(np.sqrt(np.sum(np.square(blocks))))


def _high_part(S: SpaceTimeSpectrum, a: float) -> SpaceTimeSpectrum:
    return spatial_projection(S, projection_mask(S.grid, ProjectionKind.GT_A, a))


def n_norm(S: SpaceTimeSpectrum) -> float:
    """Z^{0,0} + X^{7/8,-1}(Q_3 u) + L4tilde; the window plays the role of the time cut-off"""
    return z_norm(S, 0.0, 0.0) + x_norm(_high_part(S, 3.0), 0.875, -1.0) + l4tilde_norm(S)


def ms_norm(S: SpaceTimeSpectrum, s: float) -> float:
    """Y^s + X^{1,-1}(Q_1 w)"""
    return y_norm(S, s) + x_norm(_high_part(S, 1.0), 1.0, -1.0)


def _check_parameters(family: NormFamily, b: Optional[float], s: Optional[float]) -> None:
    takes_b, takes_s = _PARAMETERS[family]
    for name, value, takes in (("b", b, takes_b), ("s", s, takes_s)):
        if takes and value is None:
            raise NormParameterError(f"{family.value} requires parameter {name}")
        if not takes and value is not None:
            raise NormParameterError(f"{family.value} does not take parameter {name}")
        if value is not None:
            low, high = PARAMETER_RANGE
            if not (np.isfinite(value) and low <= value <= high):
                raise NormParameterError(f"{name}={value} outside [{low}, {high}]")


def bourgain_norm(
    S: SpaceTimeSpectrum,
    family: Union[NormFamily, str],
    b: float = None,
    s: float = None
) -> float:
    """
    Evaluate one norm family on a space-time spectrum

    Args:
        S: Windowed space-time spectrum
        family: X, Xdot, Z, A, Y, L4tilde, N or Ms
        b: Modulation exponent, for the families that take it
        s: Sobolev exponent, for the families that take it

    Raises:
        NormParameterError: If the family does not take a given parameter, misses
            a required one, or a parameter lies outside [-2, 2]
    """
    try:
        family = NormFamily(family)
    except ValueError:
        raise NormParameterError(f"unknown norm family {family!r}")
    _check_parameters(family, b, s)
    if family is NormFamily.X:
        return x_norm(S, b, s)
    if family is NormFamily.XDOT:
        return xdot_norm(S, b, s)
    if family is NormFamily.Z:
        return z_norm(S, b, s)
    if family is NormFamily.A:
        return a_norm(S, b)
    if family is NormFamily.Y:
        return y_norm(S, s)
    if family is NormFamily.L4TILDE:
        return l4tilde_norm(S)
    if family is NormFamily.N:
        return n_norm(S)
    return ms_norm(S, s)


def sup_norm_in_time(S: SpaceTimeSpectrum, s: float = 0.0) -> float:
    """max_t ||psi u(t)||_{H^s} over the padded time lattice"""
    return float(np.max(sobolev_norms(S.grid, S.windowed_coefficients(), s)))


@dataclass
class NormReport:
    """Named norm values of one spectrum"""
    values: Dict[str, float]
    taper: str
    note: str = SURROGATE_NOTE
    parameters: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        for label, value in self.values.items():
            if not (np.isfinite(value) and value >= 0):
                raise ValueError(f"norm {label} is not a finite nonnegative value: {value}")

    def __getitem__(self, label: str) -> float:
        return self.values[label]

    def to_json(self) -> Dict[str, object]:
        return {
            "norms": {label: float(v) for label, v in self.values.items()},
            "parameters": dict(self.parameters),
            "taper": self.taper,
            "note": self.note,
        }


def norm_report(S: SpaceTimeSpectrum, b: float = 0.5, s: float = 0.0) -> NormReport:
    """Every family at (b, s), plus the plain L^4 norm"""
    values = {
        f"X^{{{b},{s}}}": bourgain_norm(S, NormFamily.X, b, s),
        f"Xdot^{{{b},{s}}}": bourgain_norm(S, NormFamily.XDOT, b, s),
        f"Z^{{{b},{s}}}": bourgain_norm(S, NormFamily.Z, b, s),
        f"A^{{{b}}}": bourgain_norm(S, NormFamily.A, b=b),
        f"Y^{{{s}}}": bourgain_norm(S, NormFamily.Y, s=s),
        "L4tilde": bourgain_norm(S, NormFamily.L4TILDE),
        "L4": lebesgue_st_norm(S, 4),
        "N": bourgain_norm(S, NormFamily.N),
        f"M^{{{s}}}": bourgain_norm(S, NormFamily.MS, s=s),
    }
    logger.debug(f"norm report at b={b}, s={s}: {values}")
    return NormReport(values, S.taper.describe(), parameters={"b": b, "s": s})
