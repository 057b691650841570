# Time integration, the Duhamel operator, monitors and the dilation symmetry
from src.evolution.duhamel import collocation_matrix, duhamel, gauss_legendre
from src.evolution.monitors import MonitorSeries, energy, momentum, monitor_series
from src.evolution.solver import evolve, reconstruct, reduce_mean, residual_bo, time_derivative
from src.evolution.symmetry import dilate, dilate_field
from src.evolution.trajectory import SolverConfig, Trajectory

__all__ = [
    "collocation_matrix",
    "duhamel",
    "gauss_legendre",
    "MonitorSeries",
    "energy",
    "momentum",
    "monitor_series",
    "evolve",
    "reconstruct",
    "reduce_mean",
    "residual_bo",
    "time_derivative",
    "dilate",
    "dilate_field",
    "SolverConfig",
    "Trajectory",
]
