"""
Experiment configuration files

One TOML file describes one experiment:

    experiment = "evolve"
    output_dir = "evolve-cos"
    seed = 0

    [grid]
    lambda = 1.0
    M = 256

    [solver]
    dt = 1e-3

    [evolve]
    u0 = "0.1*cos(x)"
    T = 1.0

Unknown keys anywhere are rejected by name.
"""
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path
from typing import Dict, List, Literal, Optional, Tuple, Type, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from config import Config
from src.errors import ExperimentConfigError
from src.evolution.trajectory import SolverConfig
from src.experiments.ic_parser import parse_initial_condition
from src.norms.spectrum import TaperKind
from src.picard.expansion import SweepMethod
from src.spectral.grid import Grid

EXPERIMENT_KINDS = ("evolve", "gauge-check", "norms", "strichartz", "picard", "illposed")


class Section(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


class GridSection(Section):
    lam: float = Field(1.0, alias="lambda", ge=1.0, description="torus period / (2 pi)")
    M: int = Field(256, description="samples, a power of two")

    @field_validator("M")
    @classmethod
    def power_of_two(cls, v: int) -> int:
        if v < 4 or v & (v - 1):
            raise ValueError(f"M must be a power of two >= 4, got {v}")
        return v

    def to_grid(self) -> Grid:
        return Grid(lam=self.lam, n_modes=self.M)


class SolverSection(Section):
    dt: float = Field(Config.DT, gt=0)
    dealias_fraction: float = Field(Config.DEALIAS_FRACTION, gt=0, le=1)
    quadrature_order: int = Field(Config.QUADRATURE_ORDER, ge=1, le=16)
    blowup_threshold: float = Field(Config.BLOWUP_THRESHOLD, gt=0)

    def to_solver_config(self) -> SolverConfig:
        return SolverConfig(**self.model_dump())


class _InitialCondition(Section):
    u0: str = Field(..., description='trig sum, e.g. "0.1*cos(x)"')

    @field_validator("u0")
    @classmethod
    def trig_sum(cls, v: str) -> str:
        try:
            parse_initial_condition(v)
        except ExperimentConfigError as e:
            raise ValueError(e.detail) from e
        return v


class EvolveParams(_InitialCondition):
    T: float = Field(..., gt=0)
    binary: bool = Field(False, description="also write trajectory.bin")


class GaugeCheckParams(_InitialCondition):
    T: float = Field(..., gt=0)
    random_fields: int = Field(50, ge=0, description="random fields for the static identities")
    band: int = Field(16, ge=1, description="mode band of the random fields")


class NormsParams(_InitialCondition):
    T: float = Field(..., gt=0)
    b: float = Field(0.5, ge=-2, le=2)
    s: float = Field(0.0, ge=-2, le=2)
    taper: TaperKind = TaperKind.BUMP


class StrichartzParams(Section):
    sample_count: int = Field(500, ge=1)
    n_times: int = Field(64, ge=Config.MIN_TIME_SAMPLES)
    band: int = Field(8, ge=1)
    sigma_band: float = Field(16.0, gt=0)
    T: float = Field(1.0, gt=0)
    taper: TaperKind = TaperKind.BUMP


class PicardParams(Section):
    phi: str = Field("cos(x)", description="trig sum")
    K: int = Field(3, ge=1, le=Config.PICARD_MAX_ORDER)
    T: float = Field(1.0, gt=0)
    eps: List[float] = Field(default_factory=lambda: [1e-3, 2e-3, 4e-3], min_length=1)
    s: float = 0.0

    @field_validator("phi")
    @classmethod
    def trig_sum(cls, v: str) -> str:
        try:
            parse_initial_condition(v, key="phi")
        except ExperimentConfigError as e:
            raise ValueError(e.detail) from e
        return v

    @field_validator("eps")
    @classmethod
    def positive(cls, v: List[float]) -> List[float]:
        if any(e <= 0 for e in v):
            raise ValueError("every eps must be positive")
        return v


class IllposedParams(Section):
    s: float = Field(..., le=0)
    t: float = Field(..., gt=0)
    N_list: List[int] = Field(..., min_length=1)
    grid_policy: Union[Literal["per_n"], int] = "per_n"
    method: SweepMethod = SweepMethod.RECURSION
    eps0: float = Field(0.5, gt=0)
    C_K: float = Field(1.0, gt=0)
    C: float = Field(1.0, gt=0)
    K: int = Field(4, ge=1)

    @field_validator("N_list")
    @classmethod
    def positive_modes(cls, v: List[int]) -> List[int]:
        if any(n < 1 for n in v):
            raise ValueError("every N must be >= 1")
        return v


PARAMS_BY_KIND: Dict[str, Type[Section]] = {
    "evolve": EvolveParams,
    "gauge-check": GaugeCheckParams,
    "norms": NormsParams,
    "strichartz": StrichartzParams,
    "picard": PicardParams,
    "illposed": IllposedParams,
}


class ExperimentConfig(Section):
    experiment: Literal["evolve", "gauge-check", "norms", "strichartz", "picard", "illposed"]
    output_dir: str = Field(..., min_length=1)
    seed: int = Field(0, ge=0)
    grid: GridSection = Field(default_factory=GridSection)
    solver: SolverSection = Field(default_factory=SolverSection)
    evolve: Optional[EvolveParams] = None
    gauge_check: Optional[GaugeCheckParams] = Field(None, alias="gauge-check")
    norms: Optional[NormsParams] = None
    strichartz: Optional[StrichartzParams] = None
    picard: Optional[PicardParams] = None
    illposed: Optional[IllposedParams] = None

    @model_validator(mode="after")
    def one_section(self) -> "ExperimentConfig":
        if self.params is None:
            raise ValueError(f"missing [{self.experiment}] table")
        for kind in EXPERIMENT_KINDS:
            if kind != self.experiment and getattr(self, _attribute(kind)) is not None:
                raise ValueError(f"[{kind}] table given for a {self.experiment} experiment")
        return self

    @property
    def params(self) -> Optional[Section]:
        return getattr(self, _attribute(self.experiment))

    def canonical(self) -> dict:
        return self.model_dump(mode="json", by_alias=True, exclude_none=True)


def _attribute(kind: str) -> str:
    return kind.replace("-", "_")


def _error_key(error: dict) -> str:
    return ".".join(str(part) for part in error["loc"]) or "<root>"


def parse_config(data: dict) -> ExperimentConfig:
    """Validate a decoded TOML document"""
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        raise ExperimentConfigError(first["msg"], _error_key(first)) from e


def load_config(path: Union[str, Path]) -> Tuple[ExperimentConfig, bytes]:
    """
    Read and validate an experiment file

    Returns:
        The validated config and the raw file bytes

    Raises:
        ExperimentConfigError: If the file is unreadable, not TOML, or invalid
    """
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as e:
        raise ExperimentConfigError(f"cannot read {path}: {e}") from e
    try:
        data = tomllib.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, tomllib.TOMLDecodeError) as e:
        raise ExperimentConfigError(f"not a valid TOML file: {e}") from e
    return parse_config(data), raw
