# Space-time norm surrogates and the Strichartz probe
from src.norms.bourgain import (
    NormFamily,
    NormReport,
    bourgain_norm,
    lebesgue_st_norm,
    norm_report,
    sup_norm_in_time,
)
from src.norms.spectrum import SpaceTimeSpectrum, TaperKind, TaperSpec, lp_block, st_transform
from src.norms.strichartz import StrichartzResult, strichartz_quotient, strichartz_ratio

__all__ = [
    "NormFamily",
    "NormReport",
    "bourgain_norm",
    "lebesgue_st_norm",
    "norm_report",
    "sup_norm_in_time",
    "SpaceTimeSpectrum",
    "TaperKind",
    "TaperSpec",
    "lp_block",
    "st_transform",
    "StrichartzResult",
    "strichartz_quotient",
    "strichartz_ratio",
]
