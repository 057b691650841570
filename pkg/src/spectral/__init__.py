# Exact Fourier calculus on the torus R/2*pi*lambda*Z
from src.spectral.grid import (
    Grid,
    RealField,
    SpectralField,
    analyze,
    check_same_grid,
    coarsen,
    field_from_function,
    random_band_limited,
    refine,
    synthesize,
    to_physical,
    to_spectral,
    zeros,
)
from src.spectral.norms import inner_product, lebesgue_norm, sobolev_norm, sobolev_norms
from src.spectral.operators import (
    FractionalOp,
    ProjectionKind,
    antiderivative,
    derivative,
    fractional,
    free_evolve,
    hilbert,
    pad_product,
    project,
)

__all__ = [
    "Grid",
    "RealField",
    "SpectralField",
    "analyze",
    "check_same_grid",
    "coarsen",
    "field_from_function",
    "random_band_limited",
    "refine",
    "synthesize",
    "to_physical",
    "to_spectral",
    "zeros",
    "inner_product",
    "lebesgue_norm",
    "sobolev_norm",
    "sobolev_norms",
    "FractionalOp",
    "ProjectionKind",
    "antiderivative",
    "derivative",
    "fractional",
    "free_evolve",
    "hilbert",
    "pad_product",
    "project",
]
