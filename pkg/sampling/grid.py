from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from config.settings import DEFAULT_GRID_SAMPLES, DEFAULT_GRID_WIDTH, MIN_GRID_SAMPLES
from models.errors import InvalidConfig


class Chart(Enum):
    """The two charts of the sphere: z near 0 and w = 1/z near infinity."""

    ZERO = "0"
    INFINITY = "inf"

    def to_json(self):
        return 0 if self is Chart.ZERO else "inf"

    @classmethod
    def parse(cls, text) -> "Chart":
        key = str(text).strip().lower()
        if key in ("0", "zero"):
            return cls.ZERO
        if key in ("inf", "infinity", "∞"):
            return cls.INFINITY
        raise InvalidConfig(f"unknown chart {text!r}, use 0 or inf")


BOTH_CHARTS = (Chart.ZERO, Chart.INFINITY)


@dataclass(frozen=True)
class GridSpec:
    half_width: float = DEFAULT_GRID_WIDTH
    samples: int = DEFAULT_GRID_SAMPLES
    charts: tuple = field(default=BOTH_CHARTS)

    def __post_init__(self):
        object.__setattr__(self, "charts", tuple(
            c if isinstance(c, Chart) else Chart.parse(c) for c in self.charts
        ))
        self.validate()

    def validate(self):
        if self.samples < MIN_GRID_SAMPLES:
            raise InvalidConfig(f"grid needs at least {MIN_GRID_SAMPLES} samples per side, got {self.samples}")
        if not self.half_width > 0:
            raise InvalidConfig(f"grid half-width must be positive, got {self.half_width}")
        if not self.charts:
            raise InvalidConfig("grid needs at least one chart")

    @property
    def spacing(self) -> float:
        return 2 * self.half_width / (self.samples - 1)

    def axis(self) -> np.ndarray:
        return np.linspace(-self.half_width, self.half_width, self.samples)

    def mesh(self) -> np.ndarray:
        """Complex sample points, indexed [row (imag), column (real)]."""
        x = self.axis()
        return x[None, :] + 1j * x[:, None]

    def points(self) -> list[tuple[Chart, complex]]:
        flat = self.mesh().ravel()
        return [(chart, complex(z)) for chart in self.charts for z in flat]

    def to_dict(self) -> dict:
        return {
            "half_width": self.half_width,
            "samples": self.samples,
            "charts": [c.value for c in self.charts],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GridSpec":
        return cls(
            half_width=float(data.get("half_width", DEFAULT_GRID_WIDTH)),
            samples=int(data.get("samples", DEFAULT_GRID_SAMPLES)),
            charts=tuple(data.get("charts", [c.value for c in BOTH_CHARTS])),
        )
