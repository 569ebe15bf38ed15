from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from models.quaternion import HVec
from sampling.grid import Chart, GridSpec


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


@dataclass(frozen=True)
class PHResidual:
    r_horizontal: float
    r_vertical: float

    @property
    def combined(self) -> float:
        return float(np.hypot(self.r_horizontal, self.r_vertical))


@dataclass(frozen=True)
class InvariantSample:
    i1_vector: HVec
    i1_density: float
    i2_scalar: complex
    i2_density: float


@dataclass(frozen=True)
class PointSample:
    """Everything classify needs from one grid point."""

    chart: Chart
    z: complex
    ph: float
    i1: float
    i2: float
    torsion: Optional[float] = None


class Verdict(Enum):
    VERTICAL = "vertical"
    HORIZONTAL = "horizontal"
    NULL_TORSION = "null_torsion"
    GENERIC = "generic"
    NOT_PSEUDOHOLOMORPHIC = "not_pseudoholomorphic"

    @property
    def display_value(self) -> str:
        if self is Verdict.NOT_PSEUDOHOLOMORPHIC:
            return f"[red]{self.value}[/red]"
        if self is Verdict.GENERIC:
            return f"[yellow]{self.value}[/yellow]"
        return f"[green]{self.value}[/green]"


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    max_ph_residual: float
    max_i1: float
    max_i2: float
    max_torsion: Optional[float]
    grid: GridSpec
    evaluated: int
    skipped: int

    def to_dict(self) -> dict:
        return {
            "classification": self.verdict.value,
            "max_ph_residual": self.max_ph_residual,
            "max_i1": self.max_i1,
            "max_i2": self.max_i2,
            "max_torsion": self.max_torsion,
            "grid": self.grid.to_dict(),
            "evaluated": self.evaluated,
            "skipped": self.skipped,
        }


@dataclass(frozen=True)
class ZeroRecord:
    location: complex
    chart: Chart
    order: int
    residual: float

    def to_dict(self) -> dict:
        return {
            "chart": self.chart.to_json(),
            "z": _pair(self.location),
            "order": self.order,
            "residual": self.residual,
        }


@dataclass(frozen=True)
class DivisorReport:
    invariant: str
    zeros: tuple = field(default=())
    identically_zero: bool = False

    @property
    def total_order(self) -> int:
        return sum(z.order for z in self.zeros)

    def to_dict(self) -> dict:
        return {
            "invariant": self.invariant,
            "zeros": [z.to_dict() for z in self.zeros],
            "total_order": self.total_order,
            "identically_zero": self.identically_zero,
        }


@dataclass(frozen=True, eq=False)
class SurfaceSample:
    z: complex
    point: np.ndarray
    dx: np.ndarray
    dy: np.ndarray
    chart: Chart = Chart.ZERO

    @property
    def E(self) -> float:
        return float(self.dx @ self.dx)

    @property
    def F(self) -> float:
        return float(self.dx @ self.dy)

    @property
    def G(self) -> float:
        return float(self.dy @ self.dy)
