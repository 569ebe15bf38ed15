"""Flags, Sp(2) frames and the Maurer-Cartan form of a frame field.

For a frame field (e1, e2) the quaternion matrix phi[b][a] = quat(e_b, de_a)
satisfies de_a = e_b phi[b][a]; it decomposes as

    phi11 = i rho1 + j conj(omega3)     phi12 = -conj(omega1)/sqrt2 + j omega2/sqrt2
    phi21 = omega1/sqrt2 + j omega2/sqrt2     phi22 = i rho2 + j tau

Derivatives are central differences: frame fields involve norms and
Gram-Schmidt, which jets do not cover.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from config.settings import (
    FLAG_TOLERANCE, FRAME_TOLERANCE, MAX_FD_STEP, MIN_FD_STEP, PHASE_COMPONENT_MIN,
)
from models.errors import FrameNotOrthonormal, NotAFlag, StepTooLarge, StepTooSmall
from models.quaternion import Quaternion, as_array, quat, right_mul
from twistor.projective import ProjPoint, horizontal_project

log = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)

QMatrix = list[list[Quaternion]]


@dataclass(frozen=True, eq=False)
class Flag:
    p: ProjPoint
    q: ProjPoint

    def pairing(self) -> float:
        return quat(self.p.rep, self.q.rep).norm()

    def is_valid(self, tol: float = FLAG_TOLERANCE) -> bool:
        return self.pairing() <= tol


@dataclass(frozen=True, eq=False)
class Sp2Frame:
    e1: np.ndarray
    e2: np.ndarray

    def column(self, a: int) -> np.ndarray:
        return self.e1 if a == 0 else self.e2

    def defect(self) -> float:
        return max(
            (quat(self.e1, self.e1) - Quaternion(1)).norm(),
            (quat(self.e2, self.e2) - Quaternion(1)).norm(),
            quat(self.e1, self.e2).norm(),
        )


FrameField = Callable[[complex], Sp2Frame]


def fix_phase(v) -> np.ndarray:
    """Right complex rescaling making the first large component positive real."""
    v = as_array(v)
    for c in v:
        if abs(c) > PHASE_COMPONENT_MIN:
            return v * (abs(c) / c)
    return v


def _unit(v) -> np.ndarray:
    v = as_array(v)
    return v / np.linalg.norm(v)


def complement(v) -> np.ndarray:
    """A fixed unit vector quaternionically orthogonal to ``v``."""
    candidates = [horizontal_project(v, basis) for basis in np.eye(4, dtype=complex)]
    best = max(candidates, key=np.linalg.norm)
    return fix_phase(_unit(best))


def frame_from_flag(flag: Flag) -> Sp2Frame:
    if not flag.is_valid():
        raise NotAFlag(f"quaternionic pairing {flag.pairing():.3g} exceeds {FLAG_TOLERANCE}")
    e1 = fix_phase(_unit(flag.p.rep))
    e2 = flag.q.rep - right_mul(e1, quat(e1, flag.q.rep))
    return Sp2Frame(e1, fix_phase(_unit(e2)))


def fiber_frame_field(base) -> FrameField:
    """Frames along the fiber through ``base``: e1 on v + (vj) conj(z), e2 fixed."""
    v = as_array(base)
    vj = np.array([-np.conj(v[1]), np.conj(v[0]), -np.conj(v[3]), np.conj(v[2])])
    e2 = complement(v)

    def field(z: complex) -> Sp2Frame:
        return Sp2Frame(fix_phase(_unit(v + vj * np.conj(z))), e2)

    return field


def constant_frame_field(frame: Sp2Frame) -> FrameField:
    return lambda z: frame


@dataclass(frozen=True)
class OneForm:
    """A complex 1-form a dz + b dzbar at a point."""

    dz: complex
    dzbar: complex

    @classmethod
    def from_xy(cls, fx: complex, fy: complex) -> "OneForm":
        return cls((fx - 1j * fy) / 2, (fx + 1j * fy) / 2)

    def conj(self) -> "OneForm":
        return OneForm(self.dzbar.conjugate(), self.dz.conjugate())

    def __add__(self, other: "OneForm") -> "OneForm":
        return OneForm(self.dz + other.dz, self.dzbar + other.dzbar)

    def __mul__(self, c: complex) -> "OneForm":
        return OneForm(self.dz * c, self.dzbar * c)

    __rmul__ = __mul__

    def norm(self) -> float:
        return float(np.hypot(abs(self.dz), abs(self.dzbar)))


@dataclass(frozen=True)
class MCBlocks:
    rho1: OneForm
    rho2: OneForm
    omega1: OneForm
    omega2: OneForm
    omega3: OneForm
    tau: OneForm
    phi_x: tuple
    phi_y: tuple

    def kappa(self) -> dict[str, OneForm]:
        return {
            "11": 1j * (self.rho2 + self.rho1 * -1),
            "12": self.tau.conj() * -1,
            "21": self.tau,
            "22": -1j * (self.rho1 + self.rho2),
            "33": 2j * self.rho1,
        }

    def skew_residual(self) -> float:
        worst = 0.0
        for phi in (self.phi_x, self.phi_y):
            for a in range(2):
                for b in range(2):
                    worst = max(worst, (phi[a][b] + phi[b][a].conj()).norm())
        return worst

    def to_dict(self) -> dict:
        def pair(form: OneForm):
            return {"dz": [form.dz.real, form.dz.imag], "dzbar": [form.dzbar.real, form.dzbar.imag]}

        return {name: pair(getattr(self, name))
                for name in ("rho1", "rho2", "omega1", "omega2", "omega3", "tau")}


def _check_step(h: float):
    if h < MIN_FD_STEP:
        raise StepTooSmall(f"step {h:g} below {MIN_FD_STEP:g}")
    if h > MAX_FD_STEP:
        raise StepTooLarge(f"step {h:g} above {MAX_FD_STEP:g}")


def _frame_at(field: FrameField, z: complex) -> Sp2Frame:
    frame = field(z)
    defect = frame.defect()
    if defect > FRAME_TOLERANCE:
        raise FrameNotOrthonormal(f"frame defect {defect:.3g} at z={z:.6g}")
    return frame


def _phi(field: FrameField, z: complex, h: float) -> tuple[QMatrix, QMatrix]:
    """phi(d/dx) and phi(d/dy) at z from central differences."""
    center = _frame_at(field, z)
    out = []
    for step in (h, 1j * h):
        plus, minus = _frame_at(field, z + step), _frame_at(field, z - step)
        de = [(plus.column(a) - minus.column(a)) / (2 * h) for a in range(2)]
        out.append([[quat(center.column(b), de[a]) for a in range(2)] for b in range(2)])
    return out[0], out[1]


def _forms(phi_x: QMatrix, phi_y: QMatrix, pick: Callable[[QMatrix], complex]) -> OneForm:
    return OneForm.from_xy(pick(phi_x), pick(phi_y))


def maurer_cartan(field: FrameField, z: complex, h: float) -> MCBlocks:
    _check_step(h)
    phi_x, phi_y = _phi(field, z, h)
    return MCBlocks(
        rho1=_forms(phi_x, phi_y, lambda p: (-1j * p[0][0].a).real),
        rho2=_forms(phi_x, phi_y, lambda p: (-1j * p[1][1].a).real),
        omega1=_forms(phi_x, phi_y, lambda p: SQRT2 * p[1][0].a),
        omega2=_forms(phi_x, phi_y, lambda p: SQRT2 * p[1][0].b),
        omega3=_forms(phi_x, phi_y, lambda p: p[0][0].b.conjugate()),
        tau=_forms(phi_x, phi_y, lambda p: p[1][1].b),
        phi_x=tuple(tuple(row) for row in phi_x),
        phi_y=tuple(tuple(row) for row in phi_y),
    )


def skew_residual(field: FrameField, z: complex, h: float) -> float:
    """max |phi[a][b] + conj(phi[b][a])|, zero up to O(h^2)."""
    return maurer_cartan(field, z, h).skew_residual()


def _qmatmul(A: QMatrix, B: QMatrix) -> QMatrix:
    return [[A[r][0] * B[0][c] + A[r][1] * B[1][c] for c in range(2)] for r in range(2)]


def structure_residual_blocks(field: FrameField, z: complex, h: float) -> dict[str, float]:
    """Entries of d(phi) + phi ^ phi on the dx ^ dy slot."""
    _check_step(h)
    A, B = _phi(field, z, h)
    B_plus, B_minus = _phi(field, z + h, h)[1], _phi(field, z - h, h)[1]
    A_plus, A_minus = _phi(field, z + 1j * h, h)[0], _phi(field, z - 1j * h, h)[0]
    AB, BA = _qmatmul(A, B), _qmatmul(B, A)
    blocks = {}
    for r in range(2):
        for c in range(2):
            dxB = B_plus[r][c] - B_minus[r][c]
            dyA = A_plus[r][c] - A_minus[r][c]
            curl = Quaternion((dxB.a - dyA.a) / (2 * h), (dxB.b - dyA.b) / (2 * h))
            blocks[f"{r + 1}{c + 1}"] = (curl + AB[r][c] - BA[r][c]).norm()
    log.debug("structure residual at %s (h=%g): %s", z, h, blocks)
    return blocks


def structure_residual(field: FrameField, z: complex, h: float) -> float:
    return max(structure_residual_blocks(field, z, h).values())
