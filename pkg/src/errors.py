"""
Exception hierarchy shared by every BOLab subsystem
"""
from typing import Optional


class BOLabError(Exception):
    """Base class for all BOLab errors"""


class GridMismatchError(BOLabError):
    """Operands live on different grids"""


class MeanNotZeroError(BOLabError):
    """A zero-mean field was required"""

    def __init__(self, mean_coefficient: complex, tolerance: float):
        self.mean_coefficient = mean_coefficient
        self.tolerance = tolerance
        super().__init__(
            f"zero mode {abs(mean_coefficient):.3e} exceeds tolerance {tolerance:.1e}"
        )


class BlowupError(BOLabError):
    """Solution left the admissible range during time stepping"""

    def __init__(self, time: float, value: float, threshold: Optional[float] = None):
        self.time = time
        self.value = value
        self.threshold = threshold
        detail = f"L-inf {value:.3e} at t={time:.6g}"
        if threshold is not None:
            detail += f" (threshold {threshold:.1e})"
        super().__init__(detail)


class ResolutionError(BOLabError):
    """Target grid cannot hold the requested spectral support"""


class TimeRangeError(BOLabError):
    """Requested time is outside the sampled range, off lattice, or too few samples"""


class NormParameterError(BOLabError):
    """Norm family called with parameters it does not take"""


class OrderError(BOLabError):
    """Unsupported expansion order"""


class ExperimentConfigError(BOLabError):
    """Experiment configuration is malformed"""

    def __init__(self, message: str, key: Optional[str] = None):
        self.key = key
        self.detail = message
        super().__init__(f"{key}: {message}" if key else message)
