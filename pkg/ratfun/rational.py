"""Rational normal form of expressions in z and conj(z).

``BiPoly`` holds a dense coefficient matrix ``c[p, q]`` of ``z^p zb^q``;
``RationalFunction`` is a quotient of two of them. Jets come out exactly
from the Taylor transfer

    t[a, b] = sum_{p,q} c[p, q] C(p, a) C(q, b) z0^(p-a) conj(z0)^(q-b),

which is a pair of matrix products.
"""

from functools import lru_cache
from math import comb
from typing import Sequence

import numpy as np

from config.settings import COEFF_PRUNE
from models.errors import ZeroPolynomial
from models.jet import WJet, order_mask
from ratfun.expr import BinOp, Const, Pow, RatExpr, Var


@lru_cache(maxsize=None)
def _binomials(size: int, order: int) -> np.ndarray:
    return np.array([[comb(p, a) for p in range(size)] for a in range(order + 1)], dtype=float)


def _powers(z: complex, size: int) -> np.ndarray:
    out = np.ones(size, dtype=complex)
    if size > 1:
        out[1:] = np.cumprod(np.full(size - 1, complex(z)))
    return out


def _transfer(z0: complex, size: int, order: int) -> np.ndarray:
    """M[a, p] = C(p, a) z0^(p-a), zero for p < a."""
    shift = np.arange(size)[None, :] - np.arange(order + 1)[:, None]
    base = np.where(shift >= 0, _powers(z0, size)[np.maximum(shift, 0)], 0)
    return _binomials(size, order) * base


class BiPoly:
    __slots__ = ("c",)

    def __init__(self, c):
        c = np.atleast_2d(np.asarray(c, dtype=complex))
        self.c = _trim(c)

    @classmethod
    def const(cls, value: complex) -> "BiPoly":
        return cls([[value]])

    @classmethod
    def monomial(cls, p: int, q: int, coeff: complex = 1.0) -> "BiPoly":
        c = np.zeros((p + 1, q + 1), dtype=complex)
        c[p, q] = coeff
        return cls(c)

    @property
    def degrees(self) -> tuple[int, int]:
        return self.c.shape[0] - 1, self.c.shape[1] - 1

    def is_zero(self) -> bool:
        return not np.any(self.c)

    def scale(self) -> float:
        return float(np.max(np.abs(self.c))) if self.c.size else 0.0

    def __add__(self, other: "BiPoly") -> "BiPoly":
        shape = np.maximum(self.c.shape, other.c.shape)
        out = np.zeros(shape, dtype=complex)
        out[:self.c.shape[0], :self.c.shape[1]] += self.c
        out[:other.c.shape[0], :other.c.shape[1]] += other.c
        return BiPoly(_prune(out))

    def __neg__(self) -> "BiPoly":
        return BiPoly(-self.c)

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other: "BiPoly") -> "BiPoly":
        (p1, q1), (p2, q2) = self.c.shape, other.c.shape
        out = np.zeros((p1 + p2 - 1, q1 + q2 - 1), dtype=complex)
        for p, q in zip(*np.nonzero(self.c)):
            out[p:p + p2, q:q + q2] += self.c[p, q] * other.c
        return BiPoly(_prune(out))

    def scaled(self, factor: complex) -> "BiPoly":
        return BiPoly(self.c * factor)

    def conj(self) -> "BiPoly":
        return BiPoly(np.conj(self.c.T))

    def dz(self) -> "BiPoly":
        if self.c.shape[0] == 1:
            return BiPoly.const(0)
        return BiPoly(self.c[1:] * np.arange(1, self.c.shape[0])[:, None])

    def low_monomial(self) -> tuple[int, int]:
        """Largest (p, q) such that z^p zb^q divides the polynomial."""
        if self.is_zero():
            return 0, 0
        rows, cols = np.nonzero(self.c)
        return int(rows.min()), int(cols.min())

    def shift_down(self, p: int, q: int) -> "BiPoly":
        return BiPoly(self.c[p:, q:])

    def shift_up(self, p: int, q: int) -> "BiPoly":
        return BiPoly(np.pad(self.c, ((p, 0), (q, 0))))

    def flipped(self) -> "BiPoly":
        """Coefficients of w^P wb^Q N(1/w, 1/wb) for the full degrees (P, Q)."""
        return BiPoly(self.c[::-1, ::-1])

    def __call__(self, z: complex) -> complex:
        z = complex(z)
        zp = _powers(z, self.c.shape[0])
        zq = _powers(z.conjugate(), self.c.shape[1])
        return complex(zp @ self.c @ zq)

    def jet(self, z0: complex, order: int) -> WJet:
        mz = _transfer(z0, self.c.shape[0], order)
        mzb = _transfer(complex(z0).conjugate(), self.c.shape[1], order)
        return WJet((mz @ self.c @ mzb.T) * order_mask(order), order)

    def __repr__(self) -> str:
        return f"BiPoly(degrees={self.degrees})"


def _prune(c: np.ndarray) -> np.ndarray:
    if c.size:
        peak = np.max(np.abs(c))
        c = np.where(np.abs(c) < COEFF_PRUNE * peak, 0, c)
    return c


def _trim(c: np.ndarray) -> np.ndarray:
    rows = np.nonzero(np.any(c != 0, axis=1))[0]
    cols = np.nonzero(np.any(c != 0, axis=0))[0]
    if rows.size == 0:
        return np.zeros((1, 1), dtype=complex)
    return c[:rows.max() + 1, :cols.max() + 1]


class RationalFunction:
    """num / den with any common monomial z^p zb^q cancelled."""

    __slots__ = ("num", "den")

    def __init__(self, num: BiPoly, den: BiPoly = None):
        den = den if den is not None else BiPoly.const(1)
        if den.is_zero():
            raise ZeroPolynomial("rational function with zero denominator")
        if num.is_zero():
            num, den = BiPoly.const(0), BiPoly.const(1)
        else:
            pn, qn = num.low_monomial()
            pd, qd = den.low_monomial()
            p, q = min(pn, pd), min(qn, qd)
            if p or q:
                num, den = num.shift_down(p, q), den.shift_down(p, q)
        self.num, self.den = num, den

    @classmethod
    def const(cls, value: complex) -> "RationalFunction":
        return cls(BiPoly.const(value))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degrees == (0, 0) and self.den.degrees == (0, 0)

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.den - other.num * self.den, self.den * other.den)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if other.is_zero():
            raise ZeroPolynomial("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def powi(self, n: int) -> "RationalFunction":
        if n < 0:
            return RationalFunction.const(1) / self.powi(-n)
        result = RationalFunction.const(1)
        for _ in range(n):
            result = result * self
        return result

    def conj(self) -> "RationalFunction":
        return RationalFunction(self.num.conj(), self.den.conj())

    def dz(self) -> "RationalFunction":
        return RationalFunction(
            self.num.dz() * self.den - self.num * self.den.dz(), self.den * self.den
        )

    def monomial_times(self, p: int, q: int) -> "RationalFunction":
        return RationalFunction(self.num.shift_up(p, q), self.den)

    def __call__(self, z: complex) -> complex:
        return self.num(z) / self.den(z)

    def jet(self, z0: complex, order: int) -> WJet:
        """Exact jet at ``z0``; PoleAtPoint where the denominator vanishes."""
        return self.num.jet(z0, order) / self.den.jet(z0, order)

    def __repr__(self) -> str:
        return f"RationalFunction(num={self.num.degrees}, den={self.den.degrees})"


def to_rational(e: RatExpr) -> RationalFunction:
    if isinstance(e, Const):
        return RationalFunction.const(e.value)
    if isinstance(e, Var):
        return RationalFunction(BiPoly.monomial(1, 0) if e.name == "z" else BiPoly.monomial(0, 1))
    if isinstance(e, BinOp):
        left, right = to_rational(e.left), to_rational(e.right)
        if e.op == "add":
            return left + right
        if e.op == "sub":
            return left - right
        if e.op == "mul":
            return left * right
        return left / right
    if isinstance(e, Pow):
        return to_rational(e.base).powi(e.exp)
    raise TypeError(f"not an expression node: {e!r}")


def at_infinity(components: Sequence[RationalFunction]) -> list[RationalFunction]:
    """Rewrite a lift in the chart w = 1/z, cleared to be finite at w = 0.

    Each component becomes w^(PD-PN) wb^(QD-QN) N~/D~ with N~, D~ the flipped
    coefficient matrices; the whole vector is then multiplied by the
    monomial w^a wb^b with the largest excesses (a, b), which is a
    projective rescaling.
    """
    flipped = []
    excess_z, excess_zb = [], []
    for rf in components:
        if rf.is_zero():
            flipped.append(None)
            continue
        (pn, qn), (pd, qd) = rf.num.degrees, rf.den.degrees
        flipped.append((pn - pd, qn - qd, RationalFunction(rf.num.flipped(), rf.den.flipped())))
        excess_z.append(pn - pd)
        excess_zb.append(qn - qd)
    if not excess_z:
        return list(components)
    a, b = max(excess_z), max(excess_zb)
    result = []
    for entry in flipped:
        if entry is None:
            result.append(RationalFunction.const(0))
            continue
        dz_excess, dzb_excess, rf = entry
        result.append(rf.monomial_times(a - dz_excess, b - dzb_excess))
    return result
