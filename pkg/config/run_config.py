import logging
from dataclasses import dataclass, field, replace
from pathlib import Path

import yaml

from config.settings import (
    DEFAULT_FD_STEP, DEFAULT_FORMAT, DEFAULT_GRID_SAMPLES, DEFAULT_GRID_WIDTH, DEFAULT_JOBS,
    DEFAULT_TOL, MAX_FD_STEP, MIN_FD_STEP, SETTINGS_FILE,
)
from models.errors import InvalidConfig
from sampling.grid import BOTH_CHARTS, GridSpec

log = logging.getLogger(__name__)

FORMATS = ("json", "csv")
MAX_TOL = 1e-2


def default_settings() -> dict:
    return {
        "run": {
            "tol": DEFAULT_TOL,
            "grid_n": DEFAULT_GRID_SAMPLES,
            "grid_width": DEFAULT_GRID_WIDTH,
            "charts": [c.value for c in BOTH_CHARTS],
            "fd_step": DEFAULT_FD_STEP,
            "format": DEFAULT_FORMAT,
            "jobs": DEFAULT_JOBS,
        }
    }


@dataclass(frozen=True)
class RunConfig:
    tol: float = DEFAULT_TOL
    grid: GridSpec = field(default_factory=GridSpec)
    fd_step: float = DEFAULT_FD_STEP
    format: str = DEFAULT_FORMAT
    jobs: int = DEFAULT_JOBS

    def __post_init__(self):
        self.validate()

    def validate(self):
        if not 0 < self.tol < MAX_TOL:
            raise InvalidConfig(f"tol must lie in (0, {MAX_TOL:g}), got {self.tol:g}")
        if self.jobs < 1:
            raise InvalidConfig(f"jobs must be at least 1, got {self.jobs}")
        if self.format not in FORMATS:
            raise InvalidConfig(f"format must be one of {', '.join(FORMATS)}, got {self.format!r}")
        if not MIN_FD_STEP <= self.fd_step <= MAX_FD_STEP:
            raise InvalidConfig(f"fd_step must lie in [{MIN_FD_STEP:g}, {MAX_FD_STEP:g}], got {self.fd_step:g}")

    def to_dict(self) -> dict:
        return {
            "tol": self.tol,
            "grid_n": self.grid.samples,
            "grid_width": self.grid.half_width,
            "charts": [c.value for c in self.grid.charts],
            "fd_step": self.fd_step,
            "format": self.format,
            "jobs": self.jobs,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        merged = {**default_settings()["run"], **(data or {})}
        try:
            grid = GridSpec(
                half_width=float(merged["grid_width"]),
                samples=int(merged["grid_n"]),
                charts=tuple(str(c) for c in merged["charts"]),
            )
            return cls(
                tol=float(merged["tol"]),
                grid=grid,
                fd_step=float(merged["fd_step"]),
                format=str(merged["format"]),
                jobs=int(merged["jobs"]),
            )
        except (TypeError, ValueError) as e:
            if isinstance(e, InvalidConfig):
                raise
            raise InvalidConfig(f"bad run settings: {e}")

    def with_overrides(self, **overrides) -> "RunConfig":
        """Copy with every non-None override applied; grid keys rebuild the grid."""
        given = {k: v for k, v in overrides.items() if v is not None}
        grid = self.grid
        if {"grid_n", "grid_width", "charts"} & given.keys():
            grid = GridSpec(
                half_width=given.pop("grid_width", grid.half_width),
                samples=given.pop("grid_n", grid.samples),
                charts=tuple(given.pop("charts", grid.charts)),
            )
        return replace(self, grid=grid, **given)


def load_settings(path=SETTINGS_FILE) -> dict:
    """Read the YAML settings, writing the defaults first if the file is missing."""
    path = Path(path)
    try:
        if not path.exists():
            settings = default_settings()
            save_settings(settings, path)
            log.info("Settings: wrote defaults to %s", path)
            return settings
        with open(path, "r", encoding="utf-8") as f:
            settings = yaml.safe_load(f) or {}
        if not isinstance(settings, dict):
            raise ValueError("top level must be a mapping")
        return settings
    except Exception as e:
        log.error("Settings: could not load %s (%s), using defaults", path, e)
        return default_settings()


def save_settings(settings: dict, path=SETTINGS_FILE):
    with open(path, "w", encoding="utf-8") as f:
        yaml.dump(settings, f, default_flow_style=False)


def load_run_config(path=SETTINGS_FILE, **overrides) -> RunConfig:
    settings = load_settings(path)
    return RunConfig.from_dict(settings.get("run") or {}).with_overrides(**overrides)
