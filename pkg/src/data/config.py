"""
Experiment configuration.

Config files are flat `key = value` text: blank lines and `#` comments are
skipped, surrounding quotes are stripped. Keyword overrides win over file
values.
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Dict, Optional, Union

from src.control import RdeParams
from src.world import SensorModel

LOGGER = logging.getLogger(__name__)

PLANNERS = ("rde", "baseline", "both")

CONFIG_KEYS = (
    "map",
    "planner",
    "trials",
    "steps",
    "seed",
    "beta",
    "lambda",
    "rho",
    "dwell_limit",
    "b_min",
    "speed",
    "tau",
    "alpha",
    "ra_weight",
    "sensor_radius",
    "prior",
    "truth_threshold",
    "out_dir",
    "literal_sigma",
    "baseline_c",
    "frontier_fallback",
    "coverage",
)

COVERAGE_MODES = ("footprint", "visited")

# file key -> dataclass field
_FIELD_NAMES = {"lambda": "lam", "map": "map_source"}

_TRUE = {"true", "yes", "1", "on"}
_FALSE = {"false", "no", "0", "off"}


def _read_config_file(path: Union[str, Path]) -> Dict[str, str]:
    config_path = Path(path)
    if not config_path.exists():
        raise FileNotFoundError(f"Config file not found: {config_path}")

    parsed: Dict[str, str] = {}
    for lineno, line in enumerate(config_path.read_text(encoding="utf-8").splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{config_path}:{lineno}: expected 'key = value', got {line!r}")
        key, value = line.split("=", 1)
        key = key.strip()
        value = value.strip().strip("'").strip('"')
        parsed[key] = value
    return parsed


def parse_bool(value: Union[str, bool], key: str = "value") -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in _TRUE:
        return True
    if text in _FALSE:
        return False
    raise ValueError(f"Invalid boolean for {key}: {value!r} (use true/false/yes/no/1/0)")


@dataclass(frozen=True)
class ExperimentConfig:
    map_source: str = "synthetic:three_blobs"
    planner: str = "rde"
    trials: int = 1
    steps: int = 2000
    seed: int = 0
    beta: float = 0.5
    lam: float = 0.3
    rho: float = 38.0
    dwell_limit: int = 10
    b_min: Optional[float] = None
    speed: float = 1.0
    tau: float = 0.1
    alpha: int = 16
    ra_weight: float = 0.5
    sensor_radius: int = 2
    prior: float = 0.0
    truth_threshold: float = 0.7
    out_dir: str = "results"
    literal_sigma: bool = False
    baseline_c: float = 0.01
    frontier_fallback: bool = False
    coverage: str = "footprint"

    def __post_init__(self):
        if self.planner not in PLANNERS:
            raise ValueError(f"planner must be one of {PLANNERS}, got {self.planner!r}")
        if self.coverage not in COVERAGE_MODES:
            raise ValueError(f"coverage must be one of {COVERAGE_MODES}, got {self.coverage!r}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.steps < 1:
            raise ValueError(f"steps must be >= 1, got {self.steps}")
        if not 0.0 <= self.truth_threshold <= 1.0:
            raise ValueError(f"truth_threshold must be in [0, 1], got {self.truth_threshold}")
        if not self.map_source:
            raise ValueError("map must name a map file or a synthetic: spec")
        # range checks for the planner and sensor fields
        self.rde_params()
        self.sensor_model()

    @property
    def planners(self):
        return ("rde", "baseline") if self.planner == "both" else (self.planner,)

    def rde_params(self) -> RdeParams:
        return RdeParams(
            beta=self.beta,
            lam=self.lam,
            rho=self.rho,
            dwell_limit=self.dwell_limit,
            b_min=self.b_min,
            speed=self.speed,
            tau=self.tau,
            alpha=self.alpha,
            ra_weight=self.ra_weight,
            literal_sigma=self.literal_sigma,
            baseline_c=self.baseline_c,
            frontier_fallback=self.frontier_fallback,
        )

    def sensor_model(self) -> SensorModel:
        return SensorModel(radius=self.sensor_radius, prior=self.prior)

    def to_dict(self) -> Dict[str, object]:
        """Config under its file keys."""
        inverse = {v: k for k, v in _FIELD_NAMES.items()}
        return {inverse.get(name, name): value for name, value in asdict(self).items()}


def _coerce(key: str, raw: object) -> object:
    name = _FIELD_NAMES.get(key, key)
    field_type = {f.name: f.type for f in fields(ExperimentConfig)}[name]
    if raw is None:
        return None
    if field_type == "bool":
        return parse_bool(raw, key)
    if isinstance(raw, str) and raw.strip().lower() in ("", "auto", "none") and key == "b_min":
        return None
    try:
        if field_type == "int":
            as_float = float(raw)
            if not as_float.is_integer():
                raise ValueError
            return int(as_float)
        if field_type in ("float", "Optional[float]"):
            return float(raw)
    except (TypeError, ValueError):
        raise ValueError(f"Invalid value for {key}: {raw!r}") from None
    return str(raw)


def load_experiment_config(path: Optional[Union[str, Path]] = None, **overrides) -> ExperimentConfig:
    """
    Build an ExperimentConfig from a config file plus explicit overrides.

    Override keys use the file spelling (`lambda`, `map`); unknown keys in
    either source raise ValueError.
    """
    file_values: Dict[str, object] = dict(_read_config_file(path)) if path is not None else {}
    merged = {**file_values, **{k: v for k, v in overrides.items() if v is not None}}

    unknown = sorted(k for k in merged if k not in CONFIG_KEYS)
    if unknown:
        raise ValueError(f"Unknown config keys: {unknown}. Allowed keys: {list(CONFIG_KEYS)}")

    kwargs = {_FIELD_NAMES.get(k, k): _coerce(k, v) for k, v in merged.items()}
    config = ExperimentConfig(**kwargs)
    LOGGER.info(
        "Loaded config: map=%s planner=%s trials=%s steps=%s seed=%s",
        config.map_source,
        config.planner,
        config.trials,
        config.steps,
        config.seed,
    )
    return config
