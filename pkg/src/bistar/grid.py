"""Polar sampling grids on the open unit disc, and 1-d golden-section search."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError

INV_PHI = (math.sqrt(5) - 1) / 2


@dataclass(frozen=True)
class GridSpec:
    """Polar grid with radii clustering geometrically toward ``r_max``.

    Radius ``k`` (``k = 1 .. n_r``) is
    ``1 - (1 - r_max)**(k/n_r) * (1 - r0)**(1 - k/n_r)``, so the last radius
    is ``r_max`` and doubling ``n_r`` keeps every old radius.  Angles are
    ``2 pi j / n_theta``.  ``n_interior`` extra radii spaced evenly on
    ``(0, r0]`` cover the inner disc.
    """

    n_r: int = 48
    n_theta: int = 256
    r_max: float = 0.999
    r0: float = 0.02
    n_interior: int = 0

    def __post_init__(self):
        if not 0 < self.r_max < 1:
            raise ArgumentError(f"r_max must lie in (0, 1), got {self.r_max}")
        if not 0 <= self.r0 < self.r_max:
            raise ArgumentError(f"r0 must lie in [0, r_max), got {self.r0}")
        if self.n_r < 1 or self.n_theta < 1 or self.n_interior < 0:
            raise ArgumentError("grid sizes must be positive")

    def radii(self) -> np.ndarray:
        s = np.arange(1, self.n_r + 1) / self.n_r
        r = 1 - (1 - self.r_max) ** s * (1 - self.r0) ** (1 - s)
        r[-1] = self.r_max
        if self.n_interior:
            inner = self.r0 * np.arange(1, self.n_interior + 1) / self.n_interior
            r = np.union1d(inner, r)
        return r

    def angles(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.n_theta) / self.n_theta

    def points(self):
        """``(r, theta, z)`` with ``z[i, j] = r[i] exp(1j theta[j])``."""
        r, th = self.radii(), self.angles()
        return r, th, r[:, None] * np.exp(1j * th)[None, :]

    def doubled(self) -> "GridSpec":
        return GridSpec(2 * self.n_r, 2 * self.n_theta, self.r_max, self.r0, 2 * self.n_interior)

    def with_r_max(self, r_max: float) -> "GridSpec":
        return GridSpec(self.n_r, self.n_theta, r_max, min(self.r0, r_max / 2), self.n_interior)


#: membership testers: minima of harmonic functionals sit near the boundary
MEMBERSHIP_GRID = GridSpec(48, 256, 0.999, 0.02)
#: pre-Schwarzian norm estimation
NORM_GRID = GridSpec(64, 512, 1 - 1e-6, 0.5, n_interior=16)
#: Schwarz-function certification grid
SCHWARZ_GRID = GridSpec(32, 64, 0.99, 0.02)


def golden_max(f, a: float, b: float, tol: float = 1e-12, max_iter: int = 200):
    """Maximize a unimodal ``f`` on ``[a, b]``; returns ``(x, f(x))``.

    The endpoints are compared against the interior optimum, so a monotone
    ``f`` returns the larger endpoint.
    """
    a, b = min(a, b), max(a, b)
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    best = max([(fc, c), (fd, d), (f(a), a), (f(b), b)], key=lambda p: p[0])
    return best[1], best[0]
