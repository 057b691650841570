"""
Solver parameters and the immutable time-indexed container of spectral states
"""
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Iterator, Mapping, Sequence

import numpy as np

from config import Config
from src.errors import TimeRangeError
from src.spectral.grid import Grid, SpectralField, check_same_grid, inverse_transform


@dataclass(frozen=True)
class SolverConfig:
    """Parameters of the integrating-factor solver and the Duhamel quadrature"""
    dt: float = Config.DT
    dealias_fraction: float = Config.DEALIAS_FRACTION
    quadrature_order: int = Config.QUADRATURE_ORDER
    blowup_threshold: float = Config.BLOWUP_THRESHOLD

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if not 0 < self.dealias_fraction <= 1:
            raise ValueError(f"dealias_fraction must lie in (0, 1], got {self.dealias_fraction}")
        if self.quadrature_order < 1:
            raise ValueError(f"quadrature_order must be >= 1, got {self.quadrature_order}")
        if not self.blowup_threshold > 0:
            raise ValueError(f"blowup_threshold must be positive, got {self.blowup_threshold}")

    def as_dict(self) -> dict:
        return {
            "dt": self.dt,
            "dealias_fraction": self.dealias_fraction,
            "quadrature_order": self.quadrature_order,
            "blowup_threshold": self.blowup_threshold,
        }


def step_count(T: float, dt: float) -> int:
    """Number of uniform steps of size dt covering [0, T]; T must be a multiple of dt"""
    if T < 0:
        raise ValueError(f"T must be nonnegative, got {T}")
    n = int(round(T / dt))
    if abs(n * dt - T) > 1e-9 * max(1.0, abs(T)):
        raise ValueError(f"T={T} is not a multiple of dt={dt}")
    return n


@dataclass(frozen=True, eq=False)
class Trajectory:
    """
    Spectral states on the uniform lattice t0 + n*dt

    `states` has shape (n_times, M) and holds the coefficients of each snapshot.
    """
    grid: Grid
    t0: float
    dt: float
    states: np.ndarray
    real: bool = True
    meta: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        states = np.array(self.states, dtype=complex)
        if states.ndim != 2 or states.shape[1] != self.grid.n_modes or states.shape[0] < 1:
            raise ValueError(f"states must have shape (n, {self.grid.n_modes}), got {states.shape}")
        if not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if not np.all(np.isfinite(states)):
            raise ValueError("trajectory contains non-finite values")
        states[:, self.grid.nyquist_index] = 0.0
        states.setflags(write=False)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "meta", MappingProxyType(dict(self.meta)))

    @classmethod
    def from_fields(
        cls,
        fields: Sequence[SpectralField],
        t0: float,
        dt: float,
        meta: Mapping[str, Any] = None
    ) -> "Trajectory":
        grid = check_same_grid(*(f.grid for f in fields))
        states = np.stack([f.coeffs for f in fields])
        real = all(f.real for f in fields)
        return cls(grid, t0, dt, states, real, meta or {})

    def __len__(self) -> int:
        return self.states.shape[0]

    def __iter__(self) -> Iterator[SpectralField]:
        for i in range(len(self)):
            yield self.state(i)

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(len(self))

    @property
    def t_end(self) -> float:
        return self.t0 + self.dt * (len(self) - 1)

    def state(self, index: int) -> SpectralField:
        return SpectralField(self.grid, self.states[index], self.real)

    def index_of(self, t: float) -> int:
        """Lattice index of time t; raises TimeRangeError off the lattice or out of range"""
        position = (t - self.t0) / self.dt
        index = int(round(position))
        if abs(position - index) > 1e-9 * max(1.0, abs(position)) or not 0 <= index < len(self):
            raise TimeRangeError(
                f"t={t} is not a lattice time of [{self.t0}, {self.t_end}] with dt={self.dt}"
            )
        return index

    def at(self, t: float) -> SpectralField:
        return self.state(self.index_of(t))

    def physical(self) -> np.ndarray:
        """Samples of every state, shape (n_times, M); real part for real trajectories"""
        values = inverse_transform(self.states, self.grid.period)
        return values.real if self.real else values

    def with_states(self, states: np.ndarray, real: bool = None, **meta) -> "Trajectory":
        merged = {**self.meta, **meta}
        return Trajectory(self.grid, self.t0, self.dt, states,
                          self.real if real is None else real, merged)
