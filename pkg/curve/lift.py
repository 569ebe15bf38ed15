"""Lifts of curves to C^4 and their jets in either chart.

Explicit, Weierstrass and Fiber curves reduce to four rational functions
of (z, zb); the chart at infinity is their ``at_infinity`` rewrite.
Partner curves are evaluated from the jet of the inner lift and use up
one jet order per level.
"""

import logging
from functools import lru_cache

import numpy as np

from config.settings import DEGENERATE_EPSILON, MAX_JET_ORDER, POLE_EPSILON
from models.curve_expr import CurveExpr, Explicit, Fiber, Partner, Weierstrass, partner_depth
from models.errors import NoHorizontalTangent, OrderExhausted, PoleAtPoint
from models.jet import HJet, check_order, jet_horizontal_project
from models.quaternion import right_j
from ratfun.rational import BiPoly, RationalFunction, at_infinity, to_rational
from sampling.grid import Chart

log = logging.getLogger(__name__)


def weierstrass_components(f: RationalFunction, g: RationalFunction) -> list[RationalFunction]:
    """(1, f - (g/2) h, g, h/2) with h = f'/g'."""
    h = f.dz() / g.dz()
    half = RationalFunction.const(0.5)
    return [RationalFunction.const(1), f - half * g * h, g, half * h]


def fiber_components(base) -> list[RationalFunction]:
    """v + (v j) zb, the fiber through [v] parametrised antiholomorphically."""
    v = np.asarray(base, dtype=complex)
    vj = right_j(v)
    return [RationalFunction(BiPoly([[v[k], vj[k]]])) for k in range(4)]


@lru_cache(maxsize=256)
def lift_components(c: CurveExpr, chart: Chart = Chart.ZERO) -> tuple:
    if isinstance(c, Partner):
        raise TypeError("partner curves have no rational lift")
    if chart is Chart.INFINITY:
        return tuple(at_infinity(lift_components(c, Chart.ZERO)))
    if isinstance(c, Explicit):
        return tuple(to_rational(e) for e in c.components)
    if isinstance(c, Weierstrass):
        return tuple(weierstrass_components(to_rational(c.f), to_rational(c.g)))
    if isinstance(c, Fiber):
        return tuple(fiber_components(c.base))
    raise TypeError(f"not a curve: {c!r}")


def partner_jet(u: HJet) -> HJet:
    """right_j(horizontal part of du/dz), one order below ``u``."""
    du = u.dz()
    return jet_horizontal_project(u.truncate(du.order), du).right_j()


def i1_density_of(u: HJet) -> float:
    value, dz = u.d(0, 0), u.d(1, 0)
    norm2 = np.vdot(value, value).real
    uj = right_j(value)
    h = dz - value * (np.vdot(value, dz) / norm2) - uj * (np.vdot(uj, dz) / norm2)
    return float(np.linalg.norm(h) / np.sqrt(norm2))


def eval_jet(c: CurveExpr, z: complex, order: int, chart: Chart = Chart.ZERO) -> HJet:
    """Jet of a lift of ``c`` at ``z`` in ``chart``."""
    check_order(order)
    depth = partner_depth(c)
    if order + depth > MAX_JET_ORDER:
        raise OrderExhausted(
            f"order {order} with partner nesting {depth} needs jets beyond {MAX_JET_ORDER}"
        )
    if isinstance(c, Partner):
        inner = eval_jet(c.inner, z, order + 1, chart)
        density = i1_density_of(inner)
        if density < DEGENERATE_EPSILON:
            raise NoHorizontalTangent(f"I1 density {density:.3g} at z={z:.6g}")
        u = partner_jet(inner)
    else:
        u = HJet.from_components([rf.jet(z, order) for rf in lift_components(c, chart)])
    if np.linalg.norm(u.value) <= POLE_EPSILON:
        raise PoleAtPoint(f"lift vanishes at z={z:.6g}")
    return u
