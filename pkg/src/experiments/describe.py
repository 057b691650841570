"""
Human-readable description of each experiment kind: its config table and the
columns of every file it writes
"""
from typing import Dict, List, Tuple

from src.errors import ExperimentConfigError
from src.experiments.schema import EXPERIMENT_KINDS, PARAMS_BY_KIND, GridSection, SolverSection

Columns = List[Tuple[str, str]]

OUTPUTS: Dict[str, Dict[str, Columns]] = {
    "evolve": {
        "trajectory.csv": [
            ("t", "time"),
            ("x", "grid point"),
            ("u", "solution of u_t + H u_xx - u u_x = 0"),
        ],
        "monitors.csv": [
            ("t", "time"),
            ("mean", "mean of u, constant along the flow"),
            ("momentum", "integral of u^2, conserved"),
            ("energy_plus", "1/2 ||D^{1/2} u||^2 + 1/6 integral u^3"),
            ("energy_minus", "1/2 ||D^{1/2} u||^2 - 1/6 integral u^3, the conserved one"),
        ],
        "residual_bo.csv": [
            ("t", "time"),
            ("residual", "||u_t + H u_xx - u u_x||_{L^2}, fourth order in dt"),
        ],
    },
    "gauge-check": {
        "residuals.csv": [
            ("t", "time"),
            ("residual_F", "F_t + H F_xx - F_x^2/2 + P_0(F_x^2)/2, F the primitive of u"),
            ("residual_w", "w_t - i w_xx against the gauge equation for w = d_x P_+(exp(-iF/2))"),
            ("residual_w2", "the same equation with the P_+ / P_- split of the product terms"),
        ],
        "identities.csv": [
            ("field_id", "0 is u0, then the random band-limited fields"),
            ("inversion", "||P_{>1} u - 2i P_{>1}(exp(iF/2) w) - ...||, high-mode inversion"),
            ("negative_modes", "||P_- u + 2i P_-(E conj(w)) + ...||, negative-mode identity"),
            ("lipschitz_ratio", "||exp(-iF1/2) - exp(-iF2/2)||_inf / ||u1 - u2||_2 against the previous field"),
            ("lipschitz_bound", "C(lambda) = sqrt(pi lambda / 6) / 2"),
        ],
    },
    "norms": {
        "norms.csv": [
            ("norm", "X, Xdot, Z, A, Y, L4tilde, L4, N, M families at (b, s)"),
            ("value", "norm of psi(t) u(t, x) over the computed window (upper-bound surrogate)"),
        ],
        "norms.json": [("norms", "the same values with the taper and parameters")],
    },
    "strichartz": {
        "strichartz.csv": [
            ("sample_id", "sample index i, generator keyed by (seed, i)"),
            ("ratio", "||v||_{L^4} / ||v||_{X^{3/8,0}}, bounded by the L^4 Strichartz estimate"),
        ],
        "strichartz.json": [("quantiles", "max ratio and quantiles of the sample")],
    },
    "picard": {
        "series_errors.csv": [
            ("eps", "amplitude of the initial datum eps*phi"),
            ("max_error", "sup_t ||u(t) - sum_{k<=K} eps^k A_k(t)||_{H^s}, O(eps^{K+1})"),
        ],
        "iterates.csv": [
            ("t", "time"),
            ("k", "order"),
            ("norm", "||A_k(t)||_{H^s}"),
        ],
        "picard.json": [("fitted_order", "slope of log(max_error) against log(eps), about K+1")],
    },
    "illposed": {
        "ratios.csv": [
            ("N", "frequency of Psi_N = N^{-s} cos(N x)"),
            ("norm_psi", "||Psi_N||_{H^s}"),
            ("norm_A3", "||A_3(t, Psi_N)||_{H^s}"),
            ("ratio", "norm_A3 / (t N^{-2s} norm_psi^3), roughly constant in N"),
            ("eps_N", "min(eps0/2, t/(4 C_K), (t N^s / (4C))^{1/K})"),
        ],
    },
}


def _schema_lines(title: str, model) -> List[str]:
    lines = [f"[{title}]"]
    for name, info in model.model_fields.items():
        key = info.alias or name
        annotation = getattr(info.annotation, "__name__", str(info.annotation))
        default = "required" if info.is_required() else f"default {info.get_default(call_default_factory=True)!r}"
        note = f"  # {info.description}" if info.description else ""
        lines.append(f"  {key}: {annotation} ({default}){note}")
    return lines


def describe_experiment(kind: str) -> str:
    """
    Config schema and output columns of one experiment kind

    Raises:
        ExperimentConfigError: For an unknown kind
    """
    if kind not in EXPERIMENT_KINDS:
        raise ExperimentConfigError(f"unknown experiment {kind!r}; expected one of {', '.join(EXPERIMENT_KINDS)}", "experiment")
    lines = [
        f'experiment = "{kind}"',
        'output_dir = "..."  # relative paths resolve against BOLAB_OUTPUT_ROOT',
        "seed = 0",
        "",
    ]
    lines += _schema_lines("grid", GridSection) + [""]
    lines += _schema_lines("solver", SolverSection) + [""]
    lines += _schema_lines(kind, PARAMS_BY_KIND[kind]) + [""]
    lines.append("Outputs:")
    for filename, columns in OUTPUTS[kind].items():
        lines.append(f"  {filename}")
        for column, meaning in columns:
            lines.append(f"    {column}: {meaning}")
    lines.append("  manifest.json")
    lines.append("    config_sha256, versions, wall_time, status, outputs")
    return "\n".join(lines)
