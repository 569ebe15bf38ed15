"""Twistor projections of curves to S^4 and their minimality residuals.

A conformal map s into the unit sphere is minimal iff it is harmonic:
Laplacian(s) + |grad s|^2 s = 0. Both conditions are checked with central
differences of step h.
"""

import logging
from typing import Optional

import numpy as np

from config.settings import (
    BRANCH_THRESHOLD, CONFORMAL_LIMIT, DEFAULT_FD_STEP, DEFAULT_JOBS, SURFACE_DEGENERATE_FLOOR,
)
from curve.invariants import partner_point
from curve.lift import eval_jet, i1_density_of
from models.curve_expr import CurveExpr, Weierstrass
from models.errors import DegeneratePoint, NotConformal
from models.reports import SurfaceSample
from sampling.grid import Chart, GridSpec
from sampling.sweeper import GridSweeper
from twistor.projective import ProjPoint, s4_coords, twistor_project

log = logging.getLogger(__name__)

MESH_COLUMNS = (
    "z_re", "z_im", "s0", "s1", "s2", "s3", "s4", "E", "F", "G",
    "conformal_residual", "harmonic_residual", "chart",
)


def project(c: CurveExpr, z: complex, chart: Chart = Chart.ZERO) -> np.ndarray:
    return s4_coords(twistor_project(ProjPoint(eval_jet(c, z, 0, chart).value))).array


def surface_point(c: CurveExpr, z: complex, h: float = DEFAULT_FD_STEP,
                  chart: Chart = Chart.ZERO) -> SurfaceSample:
    dx = (project(c, z + h, chart) - project(c, z - h, chart)) / (2 * h)
    dy = (project(c, z + 1j * h, chart) - project(c, z - 1j * h, chart)) / (2 * h)
    return SurfaceSample(z, project(c, z, chart), dx, dy, chart)


def conformal_residual(sample: SurfaceSample) -> float:
    total = sample.E + sample.G
    if total <= SURFACE_DEGENERATE_FLOOR:
        raise DegeneratePoint(f"E + G = {total:.3g} at z={sample.z:.6g}")
    return (abs(sample.E - sample.G) + 2 * abs(sample.F)) / total


def _harmonic(c: CurveExpr, sample: SurfaceSample, h: float) -> float:
    conformal = conformal_residual(sample)
    if conformal >= CONFORMAL_LIMIT:
        raise NotConformal(f"conformal residual {conformal:.3g} at z={sample.z:.6g}")
    z, chart = sample.z, sample.chart
    around = sum(project(c, z + step, chart) for step in (h, -h, 1j * h, -1j * h))
    laplacian = (around - 4 * sample.point) / h ** 2
    total = sample.E + sample.G
    return float(np.linalg.norm(laplacian + total * sample.point) / total)


def harmonic_residual(c: CurveExpr, z: complex, h: float = DEFAULT_FD_STEP,
                      chart: Chart = Chart.ZERO) -> float:
    return _harmonic(c, surface_point(c, z, h, chart), h)


def antipodal_check(c: CurveExpr, z: complex, chart: Chart = Chart.ZERO) -> float:
    """|s(X(z)) + s(partner(X)(z))|, zero when the flag is quaternionically orthogonal."""
    mine = project(c, z, chart)
    partner = s4_coords(twistor_project(partner_point(c, z, chart))).array
    return float(np.linalg.norm(mine + partner))


def is_branch_point(c: CurveExpr, z: complex, chart: Chart = Chart.ZERO) -> bool:
    return i1_density_of(eval_jet(c, z, 1, chart)) < BRANCH_THRESHOLD


def _row(c: CurveExpr, chart: Chart, z: complex, h: float) -> dict:
    sample = surface_point(c, z, h, chart)
    conformal: Optional[float] = None
    harmonic: Optional[float] = None
    if not is_branch_point(c, z, chart):
        try:
            conformal = conformal_residual(sample)
            harmonic = _harmonic(c, sample, h)
        except (DegeneratePoint, NotConformal) as e:
            log.debug("surface_mesh: no harmonic residual at %s z=%s (%s)", chart.value, z, e.kind)
    row = {"z_re": z.real, "z_im": z.imag}
    row.update({f"s{k}": float(x) for k, x in enumerate(sample.point)})
    row.update({
        "E": sample.E,
        "F": sample.F,
        "G": sample.G,
        "conformal_residual": conformal,
        "harmonic_residual": harmonic,
        "chart": chart.to_json(),
    })
    return row


def surface_mesh(c: CurveExpr, grid: GridSpec, h: float = DEFAULT_FD_STEP,
                 jobs: int = DEFAULT_JOBS) -> list[dict]:
    """One row per grid point, keyed by MESH_COLUMNS; unavailable residuals are None."""
    rows = GridSweeper(jobs).sweep(lambda chart, z: _row(c, chart, z, h), grid)
    return [row for _, _, row in rows]


def totally_geodesic_example() -> Weierstrass:
    """(1, 0, z, 0): a round S^2 that is horizontal and whose partner has null torsion."""
    return Weierstrass.from_texts("0", "z")
