import logging
from typing import Optional

from config.settings import DEFAULT_JOBS, DEFAULT_TOL, DENSITY_FLOOR
from curve.invariants import sample_point
from models.curve_expr import CurveExpr
from models.errors import EmptyGrid
from models.reports import Classification, PointSample, Verdict
from sampling.grid import GridSpec
from sampling.sweeper import GridSweeper

log = logging.getLogger(__name__)


def sweep(c: CurveExpr, grid: GridSpec, sweeper: Optional[GridSweeper] = None) -> list[PointSample]:
    """Point samples over the grid, poles and vertical points of partners skipped."""
    sweeper = sweeper or GridSweeper()
    return [s for _, _, s in sweeper.sweep(lambda chart, z: sample_point(c, z, chart), grid)]


def classify(c: CurveExpr, grid: GridSpec, tol: float = DEFAULT_TOL,
             jobs: int = DEFAULT_JOBS) -> Classification:
    """Vertical, horizontal or null-torsion, decided by grid maxima.

    Densities are compared relative to the largest i1 + i2 on the grid, so the
    verdict does not depend on how the lift is scaled.
    """
    sweeper = GridSweeper(jobs)
    samples = sweep(c, grid, sweeper)
    if not samples:
        raise EmptyGrid(f"no grid point could be evaluated ({sweeper.skipped} skipped)")

    scale = max(max(s.i1 + s.i2 for s in samples), DENSITY_FLOOR)
    max_ph = max(s.ph for s in samples)
    max_i1 = max(s.i1 for s in samples) / scale
    max_i2 = max(s.i2 for s in samples) / scale
    torsions = [s.torsion for s in samples if s.torsion is not None]
    max_torsion = max(torsions) if torsions else None

    if max_ph > tol:
        verdict = Verdict.NOT_PSEUDOHOLOMORPHIC
    elif max_i1 < tol:
        verdict = Verdict.VERTICAL
    elif max_i2 < tol:
        verdict = Verdict.HORIZONTAL
    elif max_torsion is not None and max_torsion < tol:
        verdict = Verdict.NULL_TORSION
    else:
        verdict = Verdict.GENERIC

    log.info("classify: %s over %d points (ph %.3g, i1 %.3g, i2 %.3g, torsion %s)",
             verdict.value, len(samples), max_ph, max_i1, max_i2,
             "n/a" if max_torsion is None else f"{max_torsion:.3g}")
    return Classification(
        verdict=verdict,
        max_ph_residual=max_ph,
        max_i1=max_i1,
        max_i2=max_i2,
        max_torsion=max_torsion,
        grid=grid,
        evaluated=len(samples),
        skipped=sweeper.skipped,
    )
