"""Quaternions as complex pairs and vectors in C^4 = H^2.

A quaternion ``a + j*b`` is stored as the complex pair ``(a, b)``; the
rules ``j*j = -1`` and ``z*j = j*conj(z)`` give

    (a + j b)(c + j d) = (a c - conj(b) d) + j (conj(a) d + b c).

An ``HVec`` (c1, c2, c3, c4) is the quaternion pair (c1 + j c2, c3 + j c4).
All scalar actions on ``HVec`` are right actions.
"""

from dataclasses import dataclass
from typing import Iterator, Union

import numpy as np

from config.settings import EPSILON


@dataclass(frozen=True)
class Quaternion:
    a: complex = 0j
    b: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "b", complex(self.b))

    def __mul__(self, other: "Quaternion") -> "Quaternion":
        if not isinstance(other, Quaternion):
            other = Quaternion(other)
        return quat_mul(self, other)

    def __add__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.a, -self.b)

    def conj(self) -> "Quaternion":
        return Quaternion(self.a.conjugate(), -self.b)

    def norm(self) -> float:
        return float(np.hypot(abs(self.a), abs(self.b)))

    def isclose(self, other: "Quaternion", tol: float = EPSILON) -> bool:
        return (self - other).norm() <= tol * max(1.0, self.norm(), other.norm())

    def to_reals(self) -> np.ndarray:
        """Real coordinates (Re a, Im a, Re b, Im b)."""
        return np.array([self.a.real, self.a.imag, self.b.real, self.b.imag])

    def to_matrix(self) -> np.ndarray:
        """4x4 real matrix of left multiplication, in the ``to_reals`` basis."""
        return np.column_stack([
            (self * basis).to_reals()
            for basis in (Quaternion(1), Quaternion(1j), Quaternion(0, 1), Quaternion(0, 1j))
        ])

    @classmethod
    def from_reals(cls, x) -> "Quaternion":
        return cls(complex(x[0], x[1]), complex(x[2], x[3]))

    def __repr__(self) -> str:
        return f"Quaternion({self.a:.6g} + j*{self.b:.6g})"


def quat_mul(q: Quaternion, p: Quaternion) -> Quaternion:
    return Quaternion(q.a * p.a - q.b.conjugate() * p.b,
                      q.a.conjugate() * p.b + q.b * p.a)


class HVec:
    """A vector (c1, c2, c3, c4) of C^4, read as the quaternion pair (c1 + j c2, c3 + j c4)."""

    __slots__ = ("c",)

    def __init__(self, c1=0j, c2=0j, c3=0j, c4=0j):
        self.c = np.array([c1, c2, c3, c4], dtype=complex)

    @classmethod
    def from_array(cls, arr) -> "HVec":
        arr = np.asarray(arr, dtype=complex)
        if arr.shape != (4,):
            raise ValueError(f"HVec needs 4 components, got shape {arr.shape}")
        vec = cls.__new__(cls)
        vec.c = arr.copy()
        return vec

    @classmethod
    def from_pair(cls, q1: Quaternion, q2: Quaternion) -> "HVec":
        return cls(q1.a, q1.b, q2.a, q2.b)

    @property
    def pair(self) -> tuple[Quaternion, Quaternion]:
        return Quaternion(self.c[0], self.c[1]), Quaternion(self.c[2], self.c[3])

    def __iter__(self) -> Iterator[complex]:
        return iter(complex(x) for x in self.c)

    def __add__(self, other: "HVec") -> "HVec":
        return HVec.from_array(self.c + as_array(other))

    def __sub__(self, other: "HVec") -> "HVec":
        return HVec.from_array(self.c - as_array(other))

    def __neg__(self) -> "HVec":
        return HVec.from_array(-self.c)

    def __mul__(self, q: Union[Quaternion, complex, float]) -> "HVec":
        if isinstance(q, Quaternion):
            return HVec.from_array(right_mul(self.c, q))
        return HVec.from_array(self.c * complex(q))

    def norm(self) -> float:
        return float(np.linalg.norm(self.c))

    def normalized(self) -> "HVec":
        return HVec.from_array(self.c / self.norm())

    def isclose(self, other: "HVec", tol: float = EPSILON) -> bool:
        return bool(np.linalg.norm(self.c - as_array(other)) <= tol * max(1.0, self.norm()))

    def to_list(self) -> list[list[float]]:
        return [[float(x.real), float(x.imag)] for x in self.c]

    @classmethod
    def from_list(cls, pairs) -> "HVec":
        return cls(*(complex(re, im) for re, im in pairs))

    def __repr__(self) -> str:
        return "HVec(" + ", ".join(f"{x:.6g}" for x in self.c) + ")"


def as_array(v) -> np.ndarray:
    if isinstance(v, HVec):
        return v.c
    return np.asarray(v, dtype=complex)


def right_mul(v, q: Quaternion) -> np.ndarray:
    """Right action of ``q = x + j y`` on each quaternion of the pair."""
    c = as_array(v)
    x, y = q.a, q.b
    out = np.empty(4, dtype=complex)
    out[0::2] = c[0::2] * x - np.conj(c[1::2]) * y
    out[1::2] = np.conj(c[0::2]) * y + c[1::2] * x
    return out


def right_j(v) -> Union[HVec, np.ndarray]:
    c = as_array(v)
    out = np.array([-np.conj(c[1]), np.conj(c[0]), -np.conj(c[3]), np.conj(c[2])])
    return HVec.from_array(out) if isinstance(v, HVec) else out


def herm(v, w) -> complex:
    """Hermitian product, conjugate-linear in the first slot."""
    return complex(np.vdot(as_array(v), as_array(w)))


def sympl(v, w) -> complex:
    c, d = as_array(v), as_array(w)
    return complex(c[0] * d[1] - c[1] * d[0] + c[2] * d[3] - c[3] * d[2])


def quat(v, w) -> Quaternion:
    return Quaternion(herm(v, w), sympl(v, w))


@dataclass(frozen=True)
class PairingTriple:
    herm: complex
    sympl: complex
    quat: Quaternion

    def decomposition_defect(self) -> float:
        """|quat - (herm + j sympl)|, zero up to rounding."""
        return (self.quat - Quaternion(self.herm, self.sympl)).norm()


def pairings(v, w) -> PairingTriple:
    h, s = herm(v, w), sympl(v, w)
    # The quaternionic product is assembled pair by pair, independent of herm/sympl.
    p1, p2 = HVec.from_array(as_array(v)).pair
    r1, r2 = HVec.from_array(as_array(w)).pair
    q = p1.conj() * r1 + p2.conj() * r2
    return PairingTriple(herm=h, sympl=s, quat=q)
