"""Truncated Wirtinger jets.

A jet of order ``k`` stores Taylor coefficients ``t[a, b]`` of the
expansion in ``(z - z0)`` and ``conj(z - z0)`` for ``a + b <= k``; the
derivative slot is ``d[a][b] = a! b! t[a, b]``. Products are then plain
truncated convolutions. Arrays may carry leading axes: an ``HJet`` is four
jets stacked on axis 0 and shares every kernel with ``WJet``.
"""

from math import factorial
from typing import Union

import numpy as np

from config.settings import MAX_JET_ORDER, POLE_EPSILON
from models.errors import OrderExhausted, PoleAtPoint

Scalar = Union[complex, float, int]


def check_order(order: int) -> int:
    if not 0 <= order <= MAX_JET_ORDER:
        raise OrderExhausted(f"jet order {order} outside 0..{MAX_JET_ORDER}")
    return order


def order_mask(order: int) -> np.ndarray:
    a, b = np.indices((order + 1, order + 1))
    return a + b <= order


def _factorials(order: int) -> np.ndarray:
    f = np.array([factorial(k) for k in range(order + 1)], dtype=float)
    return np.outer(f, f)


def jet_mul(s: np.ndarray, t: np.ndarray, order: int) -> np.ndarray:
    n = order + 1
    out = np.zeros(np.broadcast_shapes(s.shape, t.shape), dtype=complex)
    for i in range(n):
        for k in range(n - i):
            out[..., i:, k:] += s[..., i:i + 1, k:k + 1] * t[..., :n - i, :n - k]
    return out * order_mask(order)


def jet_div(s: np.ndarray, t: np.ndarray, order: int) -> np.ndarray:
    t00 = t[..., 0, 0]
    if np.any(np.abs(t00) <= POLE_EPSILON):
        raise PoleAtPoint(f"division by a jet with value {np.min(np.abs(t00)):.3g}")
    shape = np.broadcast_shapes(s.shape, t.shape)
    s = np.broadcast_to(s, shape)
    q = np.zeros(shape, dtype=complex)
    for deg in range(order + 1):
        for a in range(deg + 1):
            b = deg - a
            acc = s[..., a, b].copy()
            for i in range(a + 1):
                for k in range(b + 1):
                    if i or k:
                        acc = acc - t[..., i, k] * q[..., a - i, b - k]
            q[..., a, b] = acc / t00
    return q


def jet_conj(t: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(t, -1, -2))


def _require_slope(order: int):
    if order < 1:
        raise OrderExhausted("an order-0 jet has no derivative")


def _one(shape, order: int) -> np.ndarray:
    one = np.zeros(shape[:-2] + (order + 1, order + 1), dtype=complex)
    one[..., 0, 0] = 1.0
    return one


def jet_powi(t: np.ndarray, n: int, order: int) -> np.ndarray:
    if n < 0:
        return jet_div(_one(t.shape, order), jet_powi(t, -n, order), order)
    result = _one(t.shape, order)
    base = t
    while n:
        if n & 1:
            result = jet_mul(result, base, order)
        n >>= 1
        if n:
            base = jet_mul(base, base, order)
    return result


def jet_dz(t: np.ndarray) -> np.ndarray:
    n = t.shape[-1]
    return t[..., 1:, :n - 1] * np.arange(1, n)[:, None]


def jet_dzbar(t: np.ndarray) -> np.ndarray:
    n = t.shape[-1]
    return t[..., :n - 1, 1:] * np.arange(1, n)[None, :]


class WJet:
    """Jet of a complex-valued map at a point."""

    __slots__ = ("order", "t")

    def __init__(self, t: np.ndarray, order: int):
        self.order = order
        self.t = np.asarray(t, dtype=complex)

    @classmethod
    def const(cls, value: Scalar, order: int) -> "WJet":
        t = np.zeros((order + 1, order + 1), dtype=complex)
        t[0, 0] = value
        return cls(t, order)

    @classmethod
    def from_derivatives(cls, d: dict, order: int) -> "WJet":
        """Build from a ``{(a, b): value}`` map of derivative slots."""
        t = np.zeros((order + 1, order + 1), dtype=complex)
        for (a, b), value in d.items():
            if a + b <= order:
                t[a, b] = value / (factorial(a) * factorial(b))
        return cls(t, order)

    @property
    def value(self) -> complex:
        return complex(self.t[0, 0])

    def d(self, a: int, b: int) -> complex:
        if a + b > self.order:
            raise OrderExhausted(f"slot ({a},{b}) beyond jet order {self.order}")
        return complex(self.t[a, b] * factorial(a) * factorial(b))

    def derivatives(self) -> np.ndarray:
        return self.t * _factorials(self.order) * order_mask(self.order)

    def truncate(self, order: int) -> "WJet":
        if order > self.order:
            raise OrderExhausted(f"cannot raise jet order {self.order} to {order}")
        return WJet(self.t[:order + 1, :order + 1] * order_mask(order), order)

    def _coerce(self, other) -> tuple[np.ndarray, np.ndarray, int]:
        if isinstance(other, WJet):
            order = min(self.order, other.order)
            return self.truncate(order).t, other.truncate(order).t, order
        return self.t, WJet.const(other, self.order).t, self.order

    def __add__(self, other) -> "WJet":
        s, t, order = self._coerce(other)
        return WJet(s + t, order)

    __radd__ = __add__

    def __sub__(self, other) -> "WJet":
        s, t, order = self._coerce(other)
        return WJet(s - t, order)

    def __rsub__(self, other) -> "WJet":
        s, t, order = self._coerce(other)
        return WJet(t - s, order)

    def __mul__(self, other) -> "WJet":
        if not isinstance(other, WJet):
            return WJet(self.t * complex(other), self.order)
        s, t, order = self._coerce(other)
        return WJet(jet_mul(s, t, order), order)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "WJet":
        s, t, order = self._coerce(other)
        return WJet(jet_div(s, t, order), order)

    def __rtruediv__(self, other) -> "WJet":
        s, t, order = self._coerce(other)
        return WJet(jet_div(t, s, order), order)

    def __neg__(self) -> "WJet":
        return WJet(-self.t, self.order)

    def conj(self) -> "WJet":
        return WJet(jet_conj(self.t), self.order)

    def powi(self, n: int) -> "WJet":
        return WJet(jet_powi(self.t, n, self.order), self.order)

    def __pow__(self, n: int) -> "WJet":
        return self.powi(int(n))

    def dz(self) -> "WJet":
        """Jet of the z-derivative, one order lower."""
        _require_slope(self.order)
        return WJet(jet_dz(self.t), self.order - 1)

    def dzbar(self) -> "WJet":
        _require_slope(self.order)
        return WJet(jet_dzbar(self.t), self.order - 1)

    def __repr__(self) -> str:
        slots = ", ".join(
            f"d{a}{b}={self.d(a, b):.6g}"
            for a in range(self.order + 1) for b in range(self.order + 1 - a)
        )
        return f"WJet(order={self.order}, {slots})"


def seed_jets(z0: complex, order: int) -> tuple[WJet, WJet]:
    """Jets of the coordinate functions z and conj(z) at ``z0``."""
    check_order(order)
    jz = WJet.const(z0, order)
    jzb = WJet.const(complex(z0).conjugate(), order)
    if order >= 1:
        jz.t[1, 0] = 1.0
        jzb.t[0, 1] = 1.0
    return jz, jzb


class HJet:
    """Jet of a C^4-valued map; component ``i`` lives in ``t[i]``."""

    __slots__ = ("order", "t")

    def __init__(self, t: np.ndarray, order: int):
        self.order = order
        self.t = np.asarray(t, dtype=complex)

    @classmethod
    def from_components(cls, components: list[WJet]) -> "HJet":
        order = min(c.order for c in components)
        return cls(np.stack([c.truncate(order).t for c in components]), order)

    def component(self, i: int) -> WJet:
        return WJet(self.t[i], self.order)

    @property
    def value(self) -> np.ndarray:
        return self.t[:, 0, 0].copy()

    def d(self, a: int, b: int) -> np.ndarray:
        if a + b > self.order:
            raise OrderExhausted(f"slot ({a},{b}) beyond jet order {self.order}")
        return self.t[:, a, b] * factorial(a) * factorial(b)

    def truncate(self, order: int) -> "HJet":
        if order > self.order:
            raise OrderExhausted(f"cannot raise jet order {self.order} to {order}")
        return HJet(self.t[:, :order + 1, :order + 1] * order_mask(order), order)

    def __add__(self, other: "HJet") -> "HJet":
        order = min(self.order, other.order)
        return HJet(self.truncate(order).t + other.truncate(order).t, order)

    def __sub__(self, other: "HJet") -> "HJet":
        order = min(self.order, other.order)
        return HJet(self.truncate(order).t - other.truncate(order).t, order)

    def scale(self, s: WJet) -> "HJet":
        """Right multiplication by a complex scalar jet."""
        order = min(self.order, s.order)
        return HJet(jet_mul(self.truncate(order).t, s.truncate(order).t[None], order), order)

    def right_j(self) -> "HJet":
        c = jet_conj(self.t)
        return HJet(np.stack([-c[1], c[0], -c[3], c[2]]), self.order)

    def dz(self) -> "HJet":
        _require_slope(self.order)
        return HJet(jet_dz(self.t), self.order - 1)

    def dzbar(self) -> "HJet":
        _require_slope(self.order)
        return HJet(jet_dzbar(self.t), self.order - 1)


def jet_herm(u: HJet, v: HJet) -> WJet:
    order = min(u.order, v.order)
    s, t = u.truncate(order).t, v.truncate(order).t
    return WJet(jet_mul(jet_conj(s), t, order).sum(axis=0), order)


def jet_sympl(u: HJet, v: HJet) -> WJet:
    order = min(u.order, v.order)
    s, t = u.truncate(order).t, v.truncate(order).t
    cross = (jet_mul(s[0], t[1], order) - jet_mul(s[1], t[0], order)
             + jet_mul(s[2], t[3], order) - jet_mul(s[3], t[2], order))
    return WJet(cross, order)


def jet_horizontal_project(u: HJet, x: HJet) -> HJet:
    """Remove from ``x`` its components along ``u`` and ``u*j``, on jets."""
    uj = u.right_j()
    norm = jet_herm(u, u)
    along = u.scale(jet_herm(u, x) / norm)
    fiber = uj.scale(jet_herm(uj, x) / norm)
    return x - along - fiber
