"""Pre-Schwarzian and Schwarzian derivatives, and the pre-Schwarzian norm.

The norm ``||f|| = sup_{|z|<1} (1 - |z|^2) |f''(z)/f'(z)|`` is estimated from
below: the weighted modulus is sampled on a polar grid whose radii cluster
at ``r_max`` and the best node is refined by golden-section search in ``r``
and ``theta``.  Every reported value is attained at a point of the disc, so
it never exceeds the true norm.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .catalog import AnalyticFunction
from .errors import DomainError, LocalUnivalenceError, NumericError
from .grid import NORM_GRID, GridSpec, golden_max


@dataclass
class NormEstimate:
    """Lower estimate of the pre-Schwarzian norm.

    ``extrapolated`` is only set on request and is *not* a lower bound.
    """

    value: float
    argmax: complex
    r_max: float
    grid: tuple
    refined: bool
    profile: list = field(default_factory=list)
    extrapolated: Optional[float] = None

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "argmax": [self.argmax.real, self.argmax.imag],
            "r_max": self.r_max,
            "grid": list(self.grid),
            "refined": self.refined,
            "lower_bound": True,
            "extrapolated": self.extrapolated,
        }


def pre_schwarzian(f: AnalyticFunction, z):
    """``T_f = f''/f'``, from the closed form when ``f`` supplies one."""
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) >= 1):
        raise DomainError("pre-Schwarzian is evaluated only inside the unit disc")
    if f.pre_schwarzian_fn is not None:
        with np.errstate(all="ignore"):
            t = np.asarray(f.pre_schwarzian_fn(z), dtype=complex)
        if not np.all(np.isfinite(t)):
            bad = np.broadcast_to(z, t.shape)[~np.isfinite(t)].ravel()[0]
            raise LocalUnivalenceError(f"T_f of {f.name} is singular", point=complex(bad))
        return t if t.ndim else complex(t)
    _, d1, d2 = f(z)
    d1 = np.asarray(d1)
    if np.any(d1 == 0) or not np.all(np.isfinite(d1)):
        bad = np.broadcast_to(z, d1.shape)[(d1 == 0) | ~np.isfinite(d1)].ravel()[0]
        raise LocalUnivalenceError(f"f' of {f.name} vanishes", point=complex(bad))
    t = d2 / d1
    return t if np.ndim(t) else complex(t)


def contour_derivative(g, z, radius: Optional[float] = None, n: int = 32):
    """``g'(z)`` by the trapezoid rule on the Cauchy integral over a small circle.

    For analytic ``g`` the error decays like ``(radius / R)**n`` with ``R`` the
    distance to the nearest singularity, so modest ``n`` reaches rounding level.
    """
    z = np.asarray(z, dtype=complex)
    if radius is None:
        radius = np.minimum(0.05, 0.25 * (1 - np.abs(z)))
    radius = np.asarray(radius, dtype=float)
    u = np.exp(2j * np.pi * np.arange(n) / n)
    pts = z[..., None] + radius[..., None] * u
    vals = np.asarray(g(pts))
    d = (vals * np.conj(u)).mean(axis=-1) / radius
    return d if d.ndim else complex(d)


def schwarzian(f: AnalyticFunction, z):
    """``S_f = T_f' - T_f^2 / 2`` with ``T_f'`` by contour differentiation."""
    t = pre_schwarzian(f, z)
    dt = contour_derivative(lambda w: pre_schwarzian(f, w), z)
    return dt - 0.5 * t * t


def weighted_modulus(f: AnalyticFunction, z):
    z = np.asarray(z, dtype=complex)
    return (1 - np.abs(z) ** 2) * np.abs(pre_schwarzian(f, z))


def norm_estimate(f: AnalyticFunction, grid: GridSpec = NORM_GRID, refine: bool = True,
                  profile: bool = True, extrapolate: bool = False, sweeps: int = 3) -> NormEstimate:
    """Lower estimate of ``||f||`` on ``|z| <= grid.r_max``.

    ``sweeps`` rounds of golden-section refinement alternate between the best
    circle (``theta``) and the best ray (``r``, from the previous grid radius
    up to ``r_max``); a refinement is kept only if it improves the value.
    Ties on the grid go to the smallest radius, then the smallest angle.
    """
    r, th, z = grid.points()
    vals = weighted_modulus(f, z)
    i, j = np.unravel_index(np.argmax(vals), vals.shape)
    best = float(vals[i, j])
    rb, tb = float(r[i]), float(th[j])

    if refine and best > 0:
        dth = 2 * np.pi / grid.n_theta
        r_lo = float(r[i - 1]) if i else 0.0

        def at(rr, tt):
            return float(weighted_modulus(f, np.array([rr * np.exp(1j * tt)]))[0])

        for _ in range(sweeps):
            t_new, v = golden_max(lambda t: at(rb, t), tb - dth, tb + dth, tol=1e-14)
            if v > best:
                best, tb = v, t_new
            r_new, v = golden_max(lambda s: at(s, tb), r_lo, grid.r_max, tol=1e-14)
            if v > best:
                best, rb = v, min(r_new, grid.r_max)
            dth *= 0.5

    arg = complex(rb * np.exp(1j * tb))
    best = float(weighted_modulus(f, np.array([arg]))[0])
    if not np.isfinite(best):
        raise NumericError("norm estimate is not finite", point=arg)
    prof = [(float(rk), float(v)) for rk, v in zip(r, vals.max(axis=1))] if profile else []
    est = NormEstimate(best, arg, grid.r_max, (len(r), grid.n_theta), refine, prof)
    if extrapolate:
        est.extrapolated = boundary_extrapolation(f, np.angle(arg))
    return est


def boundary_extrapolation(f: AnalyticFunction, theta: float, levels: int = 6,
                           delta0: float = 1e-2) -> float:
    """Richardson extrapolation of the weighted modulus to ``r -> 1`` along a ray.

    Assumes the weighted modulus is smooth in ``delta = 1 - r``.  The result
    is an estimate, not a bound.
    """
    deltas = delta0 * 0.5 ** np.arange(levels)
    col = [float(weighted_modulus(f, np.array([(1 - d) * np.exp(1j * theta)]))[0]) for d in deltas]
    for m in range(1, levels):
        col = [(2**m * col[k + 1] - col[k]) / (2**m - 1) for k in range(len(col) - 1)]
    return col[0]
