"""
Experiment runner: executes one validated config and writes its artifacts

Every run ends with manifest.json in the output directory, whether the
experiment succeeded or failed once it was started.
"""
import hashlib
import json
import logging
import platform
import sys
import time
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np
import pydantic
import scipy

import src
from config import Config
from src.artifacts import write_csv, write_json
from src.errors import BlowupError, ExperimentConfigError
from src.evolution import evolve, monitor_series, reconstruct, reduce_mean, residual_bo
from src.evolution.export import monitors_to_csv, trajectory_to_csv, write_trajectory_binary
from src.evolution.trajectory import step_count
from src.experiments.ic_parser import parse_initial_condition
from src.experiments.schema import ExperimentConfig
from src.gauge import check_highmode_inversion, check_negative_mode_identity, lipschitz_ratio
from src.gauge import residual_series, residuals_to_csv
from src.norms import TaperSpec, norm_report, st_transform, strichartz_ratio
from src.picard import fit_order, illposed_sweep, picard_iterates, series_vs_solver
from src.spectral.grid import RealField, random_band_limited
from src.spectral.norms import sobolev_norms

logger = logging.getLogger(__name__)


class ExperimentRunner:
    def __init__(
        self,
        config: ExperimentConfig,
        config_bytes: Optional[bytes] = None,
        output_root: Optional[str] = None
    ):
        """Bind a validated config to its output directory"""
        self.config = config
        self.config_bytes = config_bytes
        self.grid = config.grid.to_grid()
        self.solver_cfg = config.solver.to_solver_config()
        self.params = config.params

        output_dir = Path(config.output_dir)
        if not output_dir.is_absolute():
            output_dir = Path(output_root or Config.OUTPUT_ROOT) / output_dir
        self.output_dir = output_dir
        self.outputs: List[str] = []
        self.stats = {
            "files": 0,
            "rows": 0,
            "wall_time": 0.0,
            "status": "pending",
        }

    @property
    def key(self) -> str:
        return self.config.experiment

    def config_hash(self) -> str:
        """sha256 of the config file as read, or of its canonical JSON form"""
        payload = self.config_bytes
        if payload is None:
            payload = json.dumps(self.config.canonical(), sort_keys=True).encode()
        return hashlib.sha256(payload).hexdigest()

    def _emit(self, filename: str) -> Path:
        path = self.output_dir / filename
        self.outputs.append(filename)
        self.stats["files"] += 1
        return path

    def _csv(self, filename: str, header, rows) -> Path:
        rows = list(rows)
        self.stats["rows"] += len(rows)
        path = write_csv(self._emit(filename), header, rows)
        print(f"   📄 {filename} ({len(rows)} rows)")
        return path

    def _field(self, text: str, name: str, mean_zero: bool = True) -> RealField:
        field_key = f"{self.key}.{name}"
        try:
            f = parse_initial_condition(text, field_key).evaluate(self.grid, field_key)
        except ExperimentConfigError:
            print(f"❌ Invalid {field_key}: {text!r}")
            raise
        if mean_zero and not f.is_mean_zero:
            raise ExperimentConfigError("must have zero mean (drop the constant term)", field_key)
        return f

    def _require_samples(self, T: float, minimum: int, name: str = "T") -> None:
        try:
            n = step_count(T, self.solver_cfg.dt) + 1
        except ValueError as e:
            raise ExperimentConfigError(str(e), f"{self.key}.{name}") from e
        if n < minimum:
            raise ExperimentConfigError(
                f"T/dt gives {n} samples, at least {minimum} are needed", f"{self.key}.{name}"
            )

    def run(self) -> Path:
        """
        Execute the experiment and write the manifest

        Raises:
            ExperimentConfigError: For settings that only fail once applied to the grid
            BlowupError: If the solver leaves the admissible range
        """
        print(f"🚀 BOLab experiment: {self.key}")
        print(f"   Grid: M={self.grid.n_modes}, lambda={self.grid.lam}")
        print(f"   Output: {self.output_dir}")
        self.output_dir.mkdir(parents=True, exist_ok=True)

        start = time.perf_counter()
        error = None
        try:
            getattr(self, f"run_{self.key.replace('-', '_')}")()
            self.stats["status"] = "ok"
        except BlowupError as e:
            self.stats["status"] = "blowup"
            error = str(e)
            raise
        except Exception as e:
            self.stats["status"] = "failed"
            error = f"{type(e).__name__}: {e}"
            raise
        finally:
            self.stats["wall_time"] = time.perf_counter() - start
            manifest = self.write_manifest(error)
            print(f"📊 {self.stats['files']} files, {self.stats['rows']} rows, "
                  f"{self.stats['wall_time']:.2f}s, status {self.stats['status']}")
        return manifest

    def write_manifest(self, error: Optional[str] = None) -> Path:
        payload: Dict[str, object] = {
            "experiment": self.key,
            "config_sha256": self.config_hash(),
            "config": self.config.canonical(),
            "seed": self.config.seed,
            "status": self.stats["status"],
            "error": error,
            "wall_time": self.stats["wall_time"],
            "outputs": list(self.outputs),
            "versions": {
                "bolab": src.__version__,
                "python": sys.version.split()[0],
                "numpy": np.__version__,
                "scipy": scipy.__version__,
                "pydantic": pydantic.VERSION,
            },
            "platform": platform.platform(),
        }
        return write_json(self.output_dir / "manifest.json", payload)

    def run_evolve(self):
        p = self.params
        u0 = self._field(p.u0, "u0", mean_zero=False)
        self._require_samples(p.T, 1)
        if u0.is_mean_zero:
            traj = evolve(u0, p.T, self.solver_cfg)
        else:
            v0, m = reduce_mean(u0)
            print(f"   Galilean shift for mean {m:.6g}")
            traj = reconstruct(evolve(v0, p.T, self.solver_cfg), m)

        trajectory_to_csv(traj, self._emit("trajectory.csv"))
        print(f"   📄 trajectory.csv ({len(traj)} x {self.grid.n_modes} samples)")
        series = monitor_series(traj)
        monitors_to_csv(series, self._emit("monitors.csv"))
        drift = series.drift()
        print(f"   Drift: mean {drift['mean']:.3e}, momentum {drift['momentum']:.3e}, "
              f"energy {drift['energy_minus']:.3e}")
        if len(traj) >= 5:
            self._csv("residual_bo.csv", ("t", "residual"), zip(traj.times, residual_bo(traj)))
        else:
            print("⚠️  Fewer than 5 steps, skipping residual_bo.csv")
        if p.binary:
            write_trajectory_binary(traj, self._emit("trajectory.bin"))

    def run_gauge_check(self):
        p = self.params
        u0 = self._field(p.u0, "u0")
        self._require_samples(p.T, 5)
        if p.random_fields and p.band >= self.grid.nyquist_index:
            raise ExperimentConfigError(
                f"band must be below {self.grid.nyquist_index}", f"{self.key}.band"
            )

        traj = evolve(u0, p.T, self.solver_cfg)
        series = residual_series(traj)
        residuals_to_csv(series, self._emit("residuals.csv"))
        print(f"   Residual maxima: {series.maxima()}")

        rng = np.random.default_rng(self.config.seed)
        fields = [u0] + [random_band_limited(self.grid, p.band, rng) for _ in range(p.random_fields)]
        rows = []
        for i, f in enumerate(fields):
            if i == 0:
                ratio, bound = 0.0, 0.0
            else:
                check = lipschitz_ratio(f, fields[i - 1])
                ratio, bound = check.ratio, check.constant
            rows.append((i, check_highmode_inversion(f), check_negative_mode_identity(f), ratio, bound))
        self._csv(
            "identities.csv",
            ("field_id", "inversion", "negative_modes", "lipschitz_ratio", "lipschitz_bound"),
            rows,
        )

    def run_norms(self):
        p = self.params
        u0 = self._field(p.u0, "u0")
        self._require_samples(p.T, Config.MIN_TIME_SAMPLES)
        traj = evolve(u0, p.T, self.solver_cfg)
        report = norm_report(st_transform(traj, TaperSpec(p.taper)), b=p.b, s=p.s)
        self._csv("norms.csv", ("norm", "value"), report.values.items())
        write_json(self._emit("norms.json"), report.to_json())

    def run_strichartz(self):
        p = self.params
        if p.band >= self.grid.nyquist_index:
            raise ExperimentConfigError(f"band must be below {self.grid.nyquist_index}", f"{self.key}.band")
        result = strichartz_ratio(
            sample_count=p.sample_count,
            seed=self.config.seed,
            grid=self.grid,
            n_times=p.n_times,
            window=TaperSpec(p.taper),
            band=p.band,
            sigma_band=p.sigma_band,
            T=p.T,
        )
        result.to_csv(self._emit("strichartz.csv"))
        self.stats["rows"] += p.sample_count
        result.to_json(self._emit("strichartz.json"))
        print(f"   Max ratio {result.max_ratio:.6g} over {p.sample_count} samples")

    def run_picard(self):
        p = self.params
        phi = self._field(p.phi, "phi")
        self._require_samples(p.T, 1)
        table = picard_iterates(phi, p.K, p.T, self.solver_cfg)

        iterate_rows = []
        for k in range(1, p.K + 1):
            norms = sobolev_norms(self.grid, table[k].states, p.s)
            iterate_rows.extend((t, k, value) for t, value in zip(table.times, norms))
        self._csv("iterates.csv", ("t", "k", "norm"), iterate_rows)

        errors = []
        for eps in p.eps:
            curve = series_vs_solver(phi, eps, p.K, p.T, self.solver_cfg, p.s, table)
            errors.append(curve.max_error)
            print(f"   eps={eps:.3g}: max error {curve.max_error:.3e}")
        self._csv("series_errors.csv", ("eps", "max_error"), zip(p.eps, errors))

        summary = {"K": p.K, "s": p.s, "fitted_order": None}
        if len(p.eps) >= 2 and all(e > 0 for e in errors):
            summary["fitted_order"] = fit_order(p.eps, errors)
            print(f"   Fitted order {summary['fitted_order']:.3f} (expected {p.K + 1})")
        write_json(self._emit("picard.json"), summary)

    def run_illposed(self):
        p = self.params
        table = illposed_sweep(
            s=p.s,
            t=p.t,
            N_list=p.N_list,
            grid_policy=p.grid_policy,
            method=p.method,
            eps0=p.eps0,
            C_K=p.C_K,
            C=p.C,
            K=p.K,
            lam=self.grid.lam,
            cfg=self.solver_cfg,
        )
        table.to_csv(self._emit("ratios.csv"))
        self.stats["rows"] += len(table.rows)
        print(f"   Ratio spread {table.spread():.3%} over N={list(p.N_list)}")
