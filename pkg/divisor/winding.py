"""Argument-principle counting of zeros inside small circles."""

import logging
import math
from typing import Callable

import numpy as np

from config.settings import CONTOUR_FLOOR, MAX_PHASE_STEP, MAX_WINDING_SAMPLES, MIN_WINDING_SAMPLES
from models.errors import InsufficientSamples, ZeroOnContour

log = logging.getLogger(__name__)


def contour(center: complex, radius: float, n: int) -> np.ndarray:
    theta = 2 * math.pi * np.arange(n) / n
    return center + radius * np.exp(1j * theta)


def winding_order(fn: Callable[[complex], complex], center: complex, radius: float,
                  n: int = MIN_WINDING_SAMPLES) -> int:
    """Net number of turns of fn around 0 along |z - center| = radius.

    The circle is refined by doubling until no phase step exceeds pi/2.
    """
    if n < MIN_WINDING_SAMPLES:
        raise InsufficientSamples(f"need at least {MIN_WINDING_SAMPLES} contour samples, got {n}")
    while True:
        values = np.array([fn(complex(p)) for p in contour(center, radius, n)], dtype=complex)
        smallest = float(np.min(np.abs(values)))
        if smallest < CONTOUR_FLOOR:
            raise ZeroOnContour(f"|fn| = {smallest:.3g} on the circle of radius {radius:g} about {center:.6g}")
        steps = np.angle(np.roll(values, -1) / values)
        if np.max(np.abs(steps)) <= MAX_PHASE_STEP:
            total = float(np.sum(steps)) / (2 * math.pi)
            log.debug("winding_order: %.6f turns about %s (r=%g, n=%d)", total, center, radius, n)
            return int(round(total))
        n *= 2
        if n > MAX_WINDING_SAMPLES:
            raise InsufficientSamples(
                f"phase still jumps by more than {MAX_PHASE_STEP:.3g} with {MAX_WINDING_SAMPLES} samples"
            )
