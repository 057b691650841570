# Picard iterates of the flow map and the experiments built on them
from src.picard.expansion import (
    ErrorCurve,
    SweepMethod,
    SweepTable,
    fit_order,
    illposed_sweep,
    series_vs_solver,
)
from src.picard.iterates import IterateTable, closed_form_A, picard_iterates
from src.picard.series import GaugeSeriesCheck, gauge_series, linear_gauge_defect

__all__ = [
    "ErrorCurve",
    "SweepMethod",
    "SweepTable",
    "fit_order",
    "illposed_sweep",
    "series_vs_solver",
    "IterateTable",
    "closed_form_A",
    "picard_iterates",
    "GaugeSeriesCheck",
    "gauge_series",
    "linear_gauge_defect",
]
