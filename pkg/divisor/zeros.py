"""Zero location and order counting for invariant sections.

A scan over the grid picks discrete local minima of |fn|, damped
Gauss-Newton polishes them, nearby hits are merged and each survivor gets
its order from the argument principle. Hits from both charts are merged on
the Riemann sphere, so a zero on the seam |z| = 1 is counted once. Chart 0
owns |z| <= 1 and the chart at infinity owns |w| < 1.
"""

import logging
from typing import Callable, Optional

import numpy as np

from config.settings import (
    DEFAULT_CANDIDATE_TOL, DEFAULT_JOBS, MIN_WINDING_SAMPLES, NEWTON_FD_STEP, NEWTON_MAX_STEPS,
    SEAM_TOLERANCE, VANISHING_PEAK, WINDING_RADIUS_CAP, ZERO_ACCEPT, ZERO_MERGE_RADIUS,
)
from curve.invariants import invariant_function
from divisor.winding import contour, winding_order
from models.curve_expr import CurveExpr
from models.reports import DivisorReport, ZeroRecord
from ratfun.poly import CPoly, poly_roots
from sampling.grid import Chart, GridSpec
from sampling.sweeper import SKIPPABLE, GridSweeper

log = logging.getLogger(__name__)

ScalarFn = Callable[[Chart, complex], complex]
VectorFn = Callable[[Chart, complex], np.ndarray]


def _vector(fn) -> VectorFn:
    return lambda chart, z: np.atleast_1d(np.asarray(fn(chart, z), dtype=complex))


def to_chart(chart: Chart, source: Chart, z: complex) -> complex:
    if chart is source:
        return z
    return complex(np.inf) if z == 0 else 1 / z


def sphere_point(chart: Chart, z: complex) -> np.ndarray:
    """Unit vector in R^3 of the chart point under inverse stereographic projection."""
    x, y, r2 = z.real, z.imag, abs(z) ** 2
    if chart is Chart.ZERO:
        return np.array([2 * x, 2 * y, r2 - 1]) / (1 + r2)
    # w = 1/z, written without dividing by w
    return np.array([2 * x, -2 * y, 1 - r2]) / (1 + r2)


def home_chart(point: np.ndarray) -> Chart:
    # the third coordinate is about |z| - 1 near the seam
    return Chart.ZERO if point[2] <= SEAM_TOLERANCE else Chart.INFINITY


def _magnitudes(fn: VectorFn, grid: GridSpec, chart: Chart, sweeper: GridSweeper) -> np.ndarray:
    mesh = grid.mesh()
    values = sweeper.map(lambda ch, z: float(np.linalg.norm(fn(ch, z))),
                         [(chart, complex(z)) for z in mesh.ravel()])
    return np.array([np.nan if v is None else v for v in values]).reshape(mesh.shape)


def _candidates(mags: np.ndarray, threshold: float) -> list[tuple[int, int]]:
    """Interior grid points no larger than any of their eight neighbours."""
    padded = np.where(np.isnan(mags), np.inf, mags)
    centre = padded[1:-1, 1:-1]
    rows, cols = padded.shape
    is_min = centre <= threshold
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di or dj:
                is_min &= centre <= padded[1 + di:rows - 1 + di, 1 + dj:cols - 1 + dj]
    return [(i + 1, j + 1) for i, j in zip(*np.nonzero(is_min))]


def _refine(fn: VectorFn, chart: Chart, z0: complex, accept: float) -> Optional[tuple[complex, float]]:
    def residual_vector(z: complex) -> np.ndarray:
        v = fn(chart, z)
        return np.concatenate([v.real, v.imag])

    z = z0
    f = residual_vector(z)
    r = float(np.linalg.norm(f))
    d = NEWTON_FD_STEP
    for _ in range(NEWTON_MAX_STEPS):
        if r <= accept:
            return z, r
        jacobian = np.column_stack([
            (residual_vector(z + d) - residual_vector(z - d)) / (2 * d),
            (residual_vector(z + 1j * d) - residual_vector(z - 1j * d)) / (2 * d),
        ])
        step = np.linalg.lstsq(jacobian, -f, rcond=None)[0]
        dz = complex(step[0], step[1])
        t = 1.0
        while t > 1e-6:
            try:
                trial = z + t * dz
                f_trial = residual_vector(trial)
                if np.linalg.norm(f_trial) < r:
                    break
            except SKIPPABLE:
                pass
            t /= 2
        else:
            break
        z, f, r = trial, f_trial, float(np.linalg.norm(f_trial))
    return (z, r) if r <= accept else None


def _merge(hits: list[tuple[Chart, complex, float]]) -> list[tuple[Chart, complex, float]]:
    """Cluster hits of either chart by chordal distance; each cluster moves to its home chart."""
    clusters: list[list[tuple[np.ndarray, Chart, complex, float]]] = []
    for chart, z, r in hits:
        point = sphere_point(chart, z)
        for cluster in clusters:
            if np.linalg.norm(cluster[0][0] - point) <= ZERO_MERGE_RADIUS:
                cluster.append((point, chart, z, r))
                break
        else:
            clusters.append([(point, chart, z, r)])
    merged = []
    for cluster in clusters:
        home = home_chart(np.mean([hit[0] for hit in cluster], axis=0))
        locations = [to_chart(home, chart, z) for _, chart, z, _ in cluster]
        merged.append((home, complex(np.mean(locations)), min(hit[3] for hit in cluster)))
    return merged


def _dominant(fn: VectorFn, chart: Chart, center: complex, radius: float) -> Callable[[complex], complex]:
    """The component staying furthest from zero on the contour."""
    values = np.array([fn(chart, complex(p)) for p in contour(center, radius, MIN_WINDING_SAMPLES)])
    k = int(np.argmax(np.min(np.abs(values), axis=0)))
    return lambda z: complex(fn(chart, z)[k])


def _radius(chart: Chart, z: complex, others: list[tuple[Chart, complex]]) -> float:
    gaps = [abs(to_chart(chart, source, w) - z) for source, w in others]
    return min([g / 2 for g in gaps] + [WINDING_RADIUS_CAP])


def _locate(fn: VectorFn, grid: GridSpec, tol: float, jobs: int) -> tuple[list[ZeroRecord], bool]:
    sweeper = GridSweeper(jobs)
    scans = {chart: _magnitudes(fn, grid, chart, sweeper) for chart in grid.charts}
    peaks = {chart: float(np.nanmax(m)) if np.any(np.isfinite(m)) else 0.0 for chart, m in scans.items()}
    if max(peaks.values()) <= VANISHING_PEAK:
        log.info("locate_zeros: section vanishes identically (peak %.3g)", max(peaks.values()))
        return [], True

    mesh = grid.mesh()
    hits = []
    for chart, mags in scans.items():
        candidates = _candidates(mags, tol * peaks[chart])
        log.debug("locate_zeros: %d candidate(s) on chart %s", len(candidates), chart.value)
        for i, j in candidates:
            refined = _refine(fn, chart, complex(mesh[i, j]), ZERO_ACCEPT * peaks[chart])
            if refined is None:
                continue
            z, r = refined
            if abs(z) <= 1 + SEAM_TOLERANCE:
                hits.append((chart, z, r))

    merged = _merge(hits)
    records = []
    for n, (chart, z, r) in enumerate(merged):
        others = [(c, w) for m, (c, w, _) in enumerate(merged) if m != n]
        radius = _radius(chart, z, others)
        order = winding_order(_dominant(fn, chart, z, radius), z, radius)
        if order < 1:
            log.debug("locate_zeros: dropping %s on chart %s with winding %d", z, chart.value, order)
            continue
        records.append(ZeroRecord(z, chart, order, r))
    records.sort(key=lambda rec: (rec.chart is Chart.INFINITY, rec.location.real, rec.location.imag))
    return records, False


def locate_zeros(fn: ScalarFn, grid: GridSpec, tol: float = DEFAULT_CANDIDATE_TOL,
                 jobs: int = DEFAULT_JOBS) -> list[ZeroRecord]:
    return _locate(_vector(fn), grid, tol, jobs)[0]


def locate_vector_zeros(fn: VectorFn, grid: GridSpec, tol: float = DEFAULT_CANDIDATE_TOL,
                        jobs: int = DEFAULT_JOBS) -> list[ZeroRecord]:
    """Zeros of a vector-valued section; orders come from its dominant component."""
    return _locate(_vector(fn), grid, tol, jobs)[0]


def divisor_report(c: CurveExpr, invariant: str, grid: GridSpec, tol: float = DEFAULT_CANDIDATE_TOL,
                   jobs: int = DEFAULT_JOBS) -> DivisorReport:
    fn = invariant_function(c, invariant)
    zeros, vanishes = _locate(_vector(fn), grid, tol, jobs)
    report = DivisorReport(invariant.upper(), tuple(zeros), vanishes)
    log.info("divisor %s: %d zero(s), total order %d%s", report.invariant, len(zeros),
             report.total_order, " (identically zero)" if vanishes else "")
    return report


def root_divisor(p: CPoly) -> list[ZeroRecord]:
    """Roots of p with multiplicities cross-checked by winding numbers."""
    roots = poly_roots(p)
    records = []
    for n, (root, multiplicity) in enumerate(roots):
        others = [(Chart.ZERO, w) for m, (w, _) in enumerate(roots) if m != n]
        radius = _radius(Chart.ZERO, root, others)
        order = winding_order(lambda z: complex(p(z)), root, radius)
        if order != multiplicity:
            log.warning("root_divisor: root %s has multiplicity %d but winds %d times", root, multiplicity, order)
        records.append(ZeroRecord(root, Chart.ZERO, order, float(abs(p(root)))))
    return records
