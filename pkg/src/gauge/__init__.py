# Gauge transform and the residual checks of its identities
from src.gauge.residuals import (
    ResidualSeries,
    residual_F_eq,
    residual_series,
    residual_w_eq,
    residual_w_eq2,
    residuals_to_csv,
)
from src.gauge.transform import (
    GaugeBundle,
    LipschitzCheck,
    check_highmode_inversion,
    check_negative_mode_identity,
    dilate_bundle,
    invert_gauge,
    lipschitz_ratio,
    make_gauge,
)

__all__ = [
    "ResidualSeries",
    "residual_F_eq",
    "residual_series",
    "residual_w_eq",
    "residual_w_eq2",
    "residuals_to_csv",
    "GaugeBundle",
    "LipschitzCheck",
    "check_highmode_inversion",
    "check_negative_mode_identity",
    "dilate_bundle",
    "invert_gauge",
    "lipschitz_ratio",
    "make_gauge",
]
