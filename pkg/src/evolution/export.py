"""
Trajectory and monitor export

Binary trajectory layout (little-endian):
    4 bytes  magic b"BOT1"
    <d       lambda
    <I       M
    <I       n (number of times)
    <d       t0
    <d       dt
    payload  n * M <f8 samples, row-major
"""
import struct
from pathlib import Path

import numpy as np

from src.artifacts import PathLike, write_csv
from src.evolution.monitors import MonitorSeries
from src.evolution.trajectory import Trajectory
from src.spectral.grid import Grid, transform

TRAJECTORY_MAGIC = b"BOT1"
_HEADER = struct.Struct("<4sdIIdd")

MONITOR_COLUMNS = ("t", "mean", "momentum", "energy_plus", "energy_minus")


def trajectory_to_csv(traj: Trajectory, path: PathLike) -> Path:
    """Long format, one (t, x, u) row per sample"""
    values = traj.physical()
    x = traj.grid.x
    rows = (
        (t, x[j], values[i, j])
        for i, t in enumerate(traj.times)
        for j in range(traj.grid.n_modes)
    )
    return write_csv(path, ("t", "x", "u"), rows)


def trajectory_to_bytes(traj: Trajectory) -> bytes:
    if not traj.real:
        raise ValueError("binary trajectory records hold real samples only")
    grid = traj.grid
    header = _HEADER.pack(TRAJECTORY_MAGIC, grid.lam, grid.n_modes, len(traj), traj.t0, traj.dt)
    return header + np.ascontiguousarray(traj.physical()).astype("<f8").tobytes()


def trajectory_from_bytes(blob: bytes) -> Trajectory:
    magic, lam, n_modes, n_times, t0, dt = _HEADER.unpack_from(blob)
    if magic != TRAJECTORY_MAGIC:
        raise ValueError(f"not a trajectory record (magic {magic!r})")
    grid = Grid(lam=lam, n_modes=n_modes)
    samples = np.frombuffer(blob, dtype="<f8", count=n_times * n_modes, offset=_HEADER.size)
    states = transform(samples.reshape(n_times, n_modes), grid.period)
    return Trajectory(grid, t0, dt, states, True)


def write_trajectory_binary(traj: Trajectory, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(trajectory_to_bytes(traj))
    return path


def monitors_to_csv(series: MonitorSeries, path: PathLike) -> Path:
    return write_csv(path, MONITOR_COLUMNS, series.rows())
