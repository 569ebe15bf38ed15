"""Pointwise invariants of a curve: pseudoholomorphicity, I1, I2, the partner and torsion.

With u the lift and h = horizontal part of du/dz:

    i1_density = |h| / |u|
    i2_scalar  = conj(herm(u j, du/dzbar)) / |u|^2

Residuals are normalised by the local scale s = max(i1 + i2, DENSITY_FLOOR)
so they do not depend on the parametrisation or on rescaling the lift.
"""

import logging

import numpy as np

from config.settings import DEFAULT_TOL, DENSITY_FLOOR, PARTNER_FLAG_TOLERANCE
from models.curve_expr import CurveExpr, Partner
from models.errors import InvalidConfig, NoHorizontalTangent, NotAFlag, OrderExhausted, PoleAtPoint
from models.jet import HJet
from models.quaternion import HVec, herm, quat, right_j, sympl
from models.reports import InvariantSample, PHResidual, PointSample
from curve.lift import eval_jet
from sampling.grid import Chart
from twistor.frames import Flag, FrameField, frame_from_flag
from twistor.projective import ProjPoint, horizontal_project

log = logging.getLogger(__name__)


def _first_order(u: HJet) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    return u.d(0, 0), u.d(1, 0), u.d(0, 1)


def _local(value, uz, uzb) -> tuple[np.ndarray, float, complex, float, float]:
    norm2 = np.vdot(value, value).real
    norm = np.sqrt(norm2)
    h = horizontal_project(value, uz)
    i1 = float(np.linalg.norm(h) / norm)
    i2_scalar = herm(right_j(value), uzb).conjugate() / norm2
    return h, i1, complex(i2_scalar), abs(i2_scalar), norm


def _ph(value, uz, uzb, i1: float, i2: float, norm: float) -> PHResidual:
    scale = max(i1 + i2, DENSITY_FLOOR)
    r_h = np.linalg.norm(horizontal_project(value, uzb)) / (norm * scale)
    r_v = abs(herm(right_j(value), uz)) / (norm * norm * scale)
    return PHResidual(float(r_h), float(r_v))


def ph_residual(c: CurveExpr, z: complex, chart: Chart = Chart.ZERO) -> PHResidual:
    value, uz, uzb = _first_order(eval_jet(c, z, 1, chart))
    _, i1, _, i2, norm = _local(value, uz, uzb)
    return _ph(value, uz, uzb, i1, i2, norm)


def invariants(c: CurveExpr, z: complex, chart: Chart = Chart.ZERO,
               tol: float = DEFAULT_TOL) -> InvariantSample:
    value, uz, uzb = _first_order(eval_jet(c, z, 1, chart))
    h, i1, i2_scalar, i2, norm = _local(value, uz, uzb)
    residual = _ph(value, uz, uzb, i1, i2, norm).combined
    if residual > tol:
        log.warning("invariants at z=%s: curve is not pseudoholomorphic here (residual %.3g)", z, residual)
    return InvariantSample(HVec.from_array(h), i1, i2_scalar, i2)


def partner_point(c: CurveExpr, z: complex, chart: Chart = Chart.ZERO) -> ProjPoint:
    """[w] with w = right_j(horizontal part of du/dz)."""
    value = eval_jet(c, z, 0, chart).value
    w = eval_jet(Partner(c), z, 0, chart).value
    pairing = quat(value / np.linalg.norm(value), w / np.linalg.norm(w)).norm()
    if pairing > PARTNER_FLAG_TOLERANCE:
        raise NotAFlag(f"partner pairing {pairing:.3g} at z={z:.6g}")
    return ProjPoint(w)


def _torsion_parts(c: CurveExpr, z: complex, chart: Chart):
    w = eval_jet(Partner(c), z, 1, chart)
    value, wz, wzb = _first_order(w)
    norm2 = np.vdot(value, value).real
    norm = np.sqrt(norm2)

    def off_line(x):
        return x - value * (np.vdot(value, x) / norm2)

    pz, pzb = off_line(wz), off_line(wzb)
    scale = max((np.linalg.norm(pz) + np.linalg.norm(pzb)) / norm, DENSITY_FLOOR)
    return pzb / (norm * scale), sympl(value, wz) / (norm2 * scale)


def torsion_residual(c: CurveExpr, z: complex, chart: Chart = Chart.ZERO) -> float:
    """Vanishes iff the partner is a holomorphic contact curve at z."""
    antiholomorphic, contact = _torsion_parts(c, z, chart)
    return float(np.linalg.norm(antiholomorphic) + abs(contact))


def torsion_vector(c: CurveExpr, z: complex, chart: Chart = Chart.ZERO) -> np.ndarray:
    antiholomorphic, contact = _torsion_parts(c, z, chart)
    return np.concatenate([antiholomorphic, [contact]])


def roundtrip_distance(c: CurveExpr, z: complex, chart: Chart = Chart.ZERO) -> float:
    """Projective distance between partner(partner(c)) and c at z."""
    original = ProjPoint(eval_jet(c, z, 0, chart).value)
    twice = ProjPoint(eval_jet(Partner(Partner(c)), z, 0, chart).value)
    return original.distance(twice)


def sample_point(c: CurveExpr, z: complex, chart: Chart = Chart.ZERO) -> PointSample:
    value, uz, uzb = _first_order(eval_jet(c, z, 1, chart))
    _, i1, _, i2, norm = _local(value, uz, uzb)
    ph = _ph(value, uz, uzb, i1, i2, norm).combined
    try:
        torsion = torsion_residual(c, z, chart)
    except (NoHorizontalTangent, OrderExhausted, PoleAtPoint) as e:
        log.debug("torsion skipped at %s z=%s: %s", chart.value, z, e.kind)
        torsion = None
    return PointSample(chart, z, ph, i1, i2, torsion)


def flag_frame_field(c: CurveExpr, chart: Chart = Chart.ZERO) -> FrameField:
    """Frames (e1, e2) along the flag ([u], [partner]) of a curve."""

    def field(z: complex):
        value = eval_jet(c, z, 0, chart).value
        return frame_from_flag(Flag(ProjPoint(value), partner_point(c, z, chart)))

    return field


INVARIANT_NAMES = ("I1", "I2", "II")


def invariant_function(c: CurveExpr, name: str):
    """The section whose zeros make up the divisor of invariant ``name``.

    I1 gives the horizontal part of du/dz over |u|, I2 the scalar i2, II the
    five components of the torsion vector.
    """
    key = name.upper()
    if key == "I1":
        def fn(chart: Chart, z: complex):
            value, uz, _ = _first_order(eval_jet(c, z, 1, chart))
            return horizontal_project(value, uz) / np.linalg.norm(value)
    elif key == "I2":
        def fn(chart: Chart, z: complex):
            value, uz, uzb = _first_order(eval_jet(c, z, 1, chart))
            return _local(value, uz, uzb)[2]
    elif key == "II":
        def fn(chart: Chart, z: complex):
            return torsion_vector(c, z, chart)
    else:
        raise InvalidConfig(f"unknown invariant {name!r}, expected one of {', '.join(INVARIANT_NAMES)}")
    return fn
