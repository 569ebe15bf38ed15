import logging
import math

import numpy as np

from config.settings import DEFAULT_JOBS, QUADRATURE_DRIFT_LIMIT
from curve.lift import eval_jet
from models.curve_expr import CurveExpr
from models.errors import InvalidConfig, QuadratureDrift
from models.jet import jet_herm
from sampling.grid import BOTH_CHARTS, Chart, GridSpec
from sampling.sweeper import GridSweeper

log = logging.getLogger(__name__)

TAUTOLOGICAL_DUAL = "tautological_dual"


def curvature_density(c: CurveExpr, z: complex, chart: Chart = Chart.ZERO) -> float:
    """d/dz d/dzbar log |u|^2 from the second-order jet of N = |u|^2."""
    u = eval_jet(c, z, 2, chart)
    n = jet_herm(u, u)
    value = n.value.real
    return float(((value * n.d(1, 1) - n.d(1, 0) * n.d(0, 1)) / value ** 2).real)


def disc_rule(samples: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights for the unit disc: Gauss-Legendre in r times a uniform rule in theta."""
    x, w = np.polynomial.legendre.leggauss(samples)
    r, wr = (x + 1) / 2, w / 2
    m = 2 * samples
    theta = 2 * math.pi * np.arange(m) / m
    nodes = (r[:, None] * np.exp(1j * theta[None, :])).ravel()
    weights = ((wr * r)[:, None] * np.full(m, 2 * math.pi / m)[None, :]).ravel()
    return nodes, weights


def chern_degree(c: CurveExpr, bundle: str = TAUTOLOGICAL_DUAL, grid: GridSpec = GridSpec(),
                 jobs: int = DEFAULT_JOBS) -> tuple[int, float]:
    """Degree of the pullback of the dual tautological bundle, with its rounding drift.

    The degree of the pullback of the tautological bundle itself is the negative.
    Both charts are always integrated; only the sample count is taken from the grid.
    """
    if bundle != TAUTOLOGICAL_DUAL:
        raise InvalidConfig(f"only the {TAUTOLOGICAL_DUAL} bundle is supported, got {bundle!r}")
    nodes, weights = disc_rule(grid.samples)
    sweeper = GridSweeper(jobs)
    total = 0.0
    if grid.charts != BOTH_CHARTS:
        log.debug("chern_degree: integrating both charts, not only %s", [ch.value for ch in grid.charts])
    for chart in BOTH_CHARTS:
        values = sweeper.map(lambda ch, z: curvature_density(c, z, ch), [(chart, complex(z)) for z in nodes])
        if sweeper.skipped:
            log.warning("chern_degree: %d quadrature node(s) skipped on chart %s", sweeper.skipped, chart.value)
        total += math.fsum(w * v for w, v in zip(weights, values) if v is not None)
    raw = total / math.pi
    degree = int(round(raw))
    drift = abs(raw - degree)
    log.info("chern_degree: raw %.9f -> %d (drift %.3g)", raw, degree, drift)
    if drift > QUADRATURE_DRIFT_LIMIT:
        raise QuadratureDrift(f"integral {raw:.6f} is {drift:.3g} away from the nearest integer")
    return degree, drift
