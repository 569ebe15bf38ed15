import logging
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from config.settings import ABERTH_MAX_SWEEPS, ROOT_MERGE_RADIUS
from models.errors import ZeroPolynomial

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CPoly:
    """Complex polynomial, coefficients in ascending degree."""

    coeffs: tuple = field(default_factory=tuple)

    def __post_init__(self):
        coeffs = [complex(c) for c in self.coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def from_roots(cls, roots: Sequence[complex], lead: complex = 1.0) -> "CPoly":
        # np.poly gives descending coefficients
        return cls(tuple(lead * np.poly(np.asarray(roots, dtype=complex))[::-1]))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def scale(self) -> float:
        return max((abs(c) for c in self.coeffs), default=0.0)

    def __call__(self, z):
        if self.is_zero():
            return np.zeros_like(np.asarray(z, dtype=complex))
        return np.polyval(self.coeffs[::-1], z)

    def derivative(self) -> "CPoly":
        return CPoly(tuple(k * c for k, c in enumerate(self.coeffs))[1:])


def _aberth(desc: np.ndarray) -> tuple[np.ndarray, bool]:
    n = len(desc) - 1
    monic = desc / desc[0]
    deriv = np.polyder(monic)
    radius = 1.0 + np.max(np.abs(monic[1:]))
    # perturbed angles keep the start off any symmetry of the root set
    angles = 2 * math.pi * np.arange(n) / n + 0.4 / n
    x = radius * np.exp(1j * angles)
    for sweep in range(ABERTH_MAX_SWEEPS):
        pv = np.polyval(monic, x)
        dpv = np.polyval(deriv, x)
        diff = x[:, None] - x[None, :]
        np.fill_diagonal(diff, np.inf)
        with np.errstate(divide="ignore", invalid="ignore"):
            repulsion = np.sum(1.0 / diff, axis=1)
            delta = pv / (dpv - pv * repulsion)
        delta = np.where(np.isfinite(delta), delta, 0)
        x = x - delta
        if np.all(np.abs(delta) <= 1e-14 * np.maximum(1.0, np.abs(x))):
            log.debug("Aberth: converged after %d sweeps", sweep + 1)
            return x, True
    return x, False


def _companion_roots(desc: np.ndarray) -> np.ndarray:
    n = len(desc) - 1
    companion = np.zeros((n, n), dtype=complex)
    companion[0, :] = -desc[1:] / desc[0]
    companion[1:, :-1] = np.eye(n - 1)
    return np.linalg.eigvals(companion)


def _merge(roots: np.ndarray) -> list[tuple[complex, int]]:
    clusters: list[list[complex]] = []
    for r in sorted(roots, key=lambda r: (r.real, r.imag)):
        for cluster in clusters:
            if abs(np.mean(cluster) - r) <= ROOT_MERGE_RADIUS:
                cluster.append(r)
                break
        else:
            clusters.append([r])
    return [(complex(np.mean(c)), len(c)) for c in clusters]


def poly_roots(p: CPoly) -> list[tuple[complex, int]]:
    """Roots with multiplicities; roots closer than 1e-6 are merged."""
    if p.is_zero():
        raise ZeroPolynomial("the zero polynomial has no root set")
    if p.degree == 0:
        return []
    desc = np.asarray(p.coeffs[::-1], dtype=complex)
    roots, converged = _aberth(desc)
    if not converged:
        log.debug("Aberth: stalled after %d sweeps, using companion matrix", ABERTH_MAX_SWEEPS)
        roots = _companion_roots(desc)
    return _merge(roots)
