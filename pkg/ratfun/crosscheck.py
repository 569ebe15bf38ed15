import numpy as np

from models.jet import WJet, seed_jets
from ratfun.expr import RatExpr, eval_expr

AXIAL = ((1, 0), (-1, 0), (0, 1), (0, -1))
DIAGONAL = ((1, 1), (1, -1), (-1, 1), (-1, -1))


def _wirtinger(fx, fy):
    return (fx - 1j * fy) / 2, (fx + 1j * fy) / 2


def fd_crosscheck(expr: RatExpr, z0: complex, h: float) -> float:
    """Largest gap between jet slots and central differences on the 9-point stencil.

    First-order slots are compared with differences of values, second-order
    slots with differences of the first-order slots, so the comparison stays
    at O(h^2) truncation plus O(eps/h) rounding. The mixed slot is checked
    twice, on the axial points and on the diagonal ones.
    """
    center = eval_expr(expr, seed_jets(z0, 2))
    jets: dict[tuple[int, int], WJet] = {
        (k, l): eval_expr(expr, seed_jets(z0 + h * complex(k, l), 1)) for k, l in AXIAL + DIAGONAL
    }

    def axial(a: int, b: int) -> tuple[complex, complex]:
        fx = (jets[1, 0].d(a, b) - jets[-1, 0].d(a, b)) / (2 * h)
        fy = (jets[0, 1].d(a, b) - jets[0, -1].d(a, b)) / (2 * h)
        return _wirtinger(fx, fy)

    def diagonal(a: int, b: int) -> tuple[complex, complex]:
        pp, pm = jets[1, 1].d(a, b), jets[1, -1].d(a, b)
        mp, mm = jets[-1, 1].d(a, b), jets[-1, -1].d(a, b)
        fx = (pp + pm - mp - mm) / (4 * h)
        fy = (pp + mp - pm - mm) / (4 * h)
        return _wirtinger(fx, fy)

    dz, dzb = axial(0, 0)
    dzz, dzzb = axial(1, 0)
    _, dzbzb = axial(0, 1)
    _, mixed_from_dz = diagonal(1, 0)
    mixed_from_dzb, _ = diagonal(0, 1)

    gaps = [
        center.d(1, 0) - dz,
        center.d(0, 1) - dzb,
        center.d(2, 0) - dzz,
        center.d(1, 1) - dzzb,
        center.d(0, 2) - dzbzb,
        center.d(1, 1) - mixed_from_dz,
        center.d(1, 1) - mixed_from_dzb,
    ]
    return float(np.max(np.abs(gaps)))
