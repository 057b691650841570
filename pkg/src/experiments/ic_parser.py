"""
Initial conditions as finite trigonometric sums

Accepted text is a signed sum of terms, each one of
    a*cos(k*x)   a*sin(k*x)   cos(x)   -sin(3*x)   c
with decimal or exponent-form amplitudes and nonnegative integer k.
A bare constant sets the mean; the solver rejects it unless it is 0.
"""
import re
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from src.errors import ExperimentConfigError
from src.spectral.grid import Grid, RealField

_NUMBER = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_TERM = re.compile(
    rf"""\s*(?P<sign>[+-])?\s*
    (?:
        (?:(?P<amp>{_NUMBER})\s*\*\s*)?
        (?P<func>cos|sin)\(\s*(?:(?P<k>\d+)\s*\*\s*)?x\s*\)
      |
        (?P<const>{_NUMBER})
    )\s*""",
    re.VERBOSE,
)


@dataclass
class TrigSum:
    """c + sum a_j cos(k_j x) + sum b_j sin(m_j x)"""
    constant: float = 0.0
    terms: List[Tuple[float, str, int]] = field(default_factory=list)

    @property
    def band(self) -> int:
        return max((k for _, _, k in self.terms), default=0)

    def evaluate(self, grid: Grid, key: str = "u0") -> RealField:
        # cos(k x) sits on the mode index k*lambda, which must be an integer below Nyquist
        for _, _, k in self.terms:
            index = k * grid.lam
            if abs(index - round(index)) > 1e-12:
                raise ExperimentConfigError(f"cos({k}x) is not periodic for lambda={grid.lam}", key)
        if self.band * grid.lam >= grid.nyquist_index:
            raise ExperimentConfigError(
                f"mode {self.band} is not resolved on M={grid.n_modes}, lambda={grid.lam}", key
            )
        x = np.asarray(grid.x)
        values = np.full(grid.n_modes, self.constant)
        for amplitude, func, k in self.terms:
            values += amplitude * (np.cos(k * x) if func == "cos" else np.sin(k * x))
        return RealField(grid, values)


def parse_initial_condition(text: str, key: str = "u0") -> TrigSum:
    """
    Parse a trigonometric sum such as "0.1*cos(x) - 0.02*sin(3*x)"

    Raises:
        ExperimentConfigError: Naming `key` if the text is not a finite trig sum
    """
    if not text or not text.strip():
        raise ExperimentConfigError("empty initial condition", key)
    result = TrigSum()
    position = 0
    first = True
    while position < len(text):
        match = _TERM.match(text, position)
        if match is None or match.end() == position:
            raise ExperimentConfigError(f"cannot parse {text[position:]!r}", key)
        if match.group("sign") is None and not first:
            raise ExperimentConfigError(f"missing operator before {match.group().strip()!r}", key)
        sign = -1.0 if match.group("sign") == "-" else 1.0
        if match.group("const") is not None:
            result.constant += sign * float(match.group("const"))
        else:
            amplitude = sign * float(match.group("amp") or 1.0)
            k = int(match.group("k") or 1)
            result.terms.append((amplitude, match.group("func"), k))
        position = match.end()
        first = False
    return result
