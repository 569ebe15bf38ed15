"""Points of CP^3, quaternionic lines, and the twistor projection to S^4."""

from dataclasses import dataclass

import numpy as np

from models.jet import HJet, jet_sympl
from models.quaternion import HVec, Quaternion, as_array, herm, quat, right_j, right_mul, sympl


class ProjPoint:
    """A complex line [rep] in C^4; the representative is kept at unit norm."""

    __slots__ = ("rep",)

    def __init__(self, rep):
        rep = as_array(rep).copy()
        norm = np.linalg.norm(rep)
        if norm == 0:
            raise ValueError("the zero vector is not a projective point")
        self.rep = rep / norm

    def distance(self, other: "ProjPoint") -> float:
        """Sine of the Fubini-Study angle, from the part of other orthogonal to self."""
        return float(np.linalg.norm(other.rep - self.rep * herm(self.rep, other.rep)))

    def isclose(self, other: "ProjPoint", tol: float = 1e-10) -> bool:
        return self.distance(other) <= tol

    def to_list(self) -> list[list[float]]:
        return HVec.from_array(self.rep).to_list()

    def __repr__(self) -> str:
        return "ProjPoint[" + " : ".join(f"{x:.4g}" for x in self.rep) + "]"


class HLine:
    """A quaternionic line rep*H, the complex 2-plane spanned by rep and rep*j."""

    __slots__ = ("rep",)

    def __init__(self, rep):
        rep = as_array(rep).copy()
        norm = np.linalg.norm(rep)
        if norm == 0:
            raise ValueError("the zero vector spans no quaternionic line")
        self.rep = rep / norm

    def distance(self, other: "HLine") -> float:
        """Sine of the principal angle; all principal angles agree for H-lines."""
        return float(np.linalg.norm(other.rep - right_mul(self.rep, quat(self.rep, other.rep))))

    def isclose(self, other: "HLine", tol: float = 1e-10) -> bool:
        return self.distance(other) <= tol

    def __repr__(self) -> str:
        return "HLine(" + ", ".join(f"{x:.4g}" for x in self.rep) + ")"


@dataclass(frozen=True)
class S4Point:
    coords: tuple

    def __post_init__(self):
        coords = tuple(float(x) for x in self.coords)
        if len(coords) != 5:
            raise ValueError("S4Point needs 5 coordinates")
        object.__setattr__(self, "coords", coords)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.coords)

    def antipode(self) -> "S4Point":
        return S4Point(tuple(-x for x in self.coords))

    def distance(self, other: "S4Point") -> float:
        return float(np.linalg.norm(self.array - other.array))


def twistor_project(p: ProjPoint) -> HLine:
    return HLine(p.rep)


def s4_array(v) -> np.ndarray:
    """Chart of HP^1 = S^4 with the real axis first, on a raw representative."""
    c = as_array(v)
    n1 = abs(c[0]) ** 2 + abs(c[1]) ** 2
    n2 = abs(c[2]) ** 2 + abs(c[3]) ** 2
    total = n1 + n2
    q1, q2 = Quaternion(c[0], c[1]), Quaternion(c[2], c[3])
    off = (q2 * q1.conj()).to_reals()
    return np.concatenate([[(n1 - n2) / total], 2 * off / total])


def s4_coords(line: HLine) -> S4Point:
    return S4Point(tuple(s4_array(line.rep)))


def horizontal_project(u, x):
    """Component of ``x`` quaternionically orthogonal to ``u``."""
    uv, xv = as_array(u), as_array(x)
    norm = np.vdot(uv, uv).real
    if norm == 0:
        raise ValueError("horizontal projection needs u != 0")
    uj = right_j(uv)
    out = xv - uv * (herm(uv, xv) / norm) - uj * (herm(uj, xv) / norm)
    return HVec.from_array(out) if isinstance(x, HVec) else out


def contact_pair(w, t):
    """sigma(w, t) = w1 t2 - w2 t1 + w3 t4 - w4 t3, on vectors or on jets."""
    if isinstance(w, HJet):
        if isinstance(t, HJet):
            return jet_sympl(w, t)
        w = w.value
    return sympl(w, t)
