"""Adaptive Gauss-Legendre quadrature along straight segments ``[0, z]``.

The integrands met in this package are analytic on the unit disc, so the
segment from the origin stays inside their domain.  Integration is batched:
many endpoints ``z`` are handled at once, and every (endpoint, subinterval)
pair is bisected independently until the 15-point rule on the interval and
on its two halves agree.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import NumericError

DEFAULT_TOL = 1e-12
DEFAULT_MAX_DEPTH = 40
_NODES = 15
# below this relative size the two rules cannot be distinguished in doubles
_RELATIVE_FLOOR = 64 * np.finfo(float).eps
# intervals with error below tol * _ABSOLUTE_FLOOR are accepted at any width
_ABSOLUTE_FLOOR = 1e-6
# narrower intervals only resolve evaluation noise
_MIN_WIDTH = 2.0**-34


@lru_cache(maxsize=None)
def _rule(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    # mapped to [0, 1]
    return 0.5 * (x + 1), 0.5 * w


def _gl(g, z, a, b):
    x, w = _rule(_NODES)
    h = (b - a)[:, None]
    s = a[:, None] + h * x[None, :]
    t = z[:, None] * s
    return (g(t) * w[None, :]).sum(axis=1) * (b - a)


def integrate_segment(g, z, tol: float = DEFAULT_TOL, max_depth: int = DEFAULT_MAX_DEPTH):
    """Return ``int_0^z g(t) dt`` for each entry of ``z``.

    ``g`` must accept a 2-d complex array and be vectorized.  The absolute
    tolerance ``tol`` is split in proportion to subinterval length, but an
    interval is also accepted once its error estimate drops below
    ``1e-6 * tol`` below a few ulps of its contribution, or once
    it is narrower than ``2**-34``; near-boundary
    integrands carry rounding noise that no width can resolve.  Raises
    :class:`NumericError` when bisection exceeds ``max_depth`` levels.
    """
    z = np.asarray(z, dtype=complex)
    shape = z.shape
    zf = z.ravel()
    total = np.zeros(zf.size, dtype=complex)
    if zf.size == 0:
        return total.reshape(shape)

    # integrate over s in [0, 1] with t = z s; dt = z ds
    idx = np.arange(zf.size)
    a = np.zeros(zf.size)
    b = np.ones(zf.size)
    coarse = _gl(g, zf[idx], a, b)
    for depth in range(max_depth + 1):
        m = 0.5 * (a + b)
        zi = zf[idx]
        left = _gl(g, zi, a, m)
        right = _gl(g, zi, m, b)
        fine = left + right
        err = np.abs(fine - coarse) * np.abs(zi)
        floor = np.maximum(_ABSOLUTE_FLOOR * tol, _RELATIVE_FLOOR * np.abs(fine * zi))
        ok = (err <= np.maximum(tol * (b - a), floor)) | (b - a < _MIN_WIDTH)
        np.add.at(total, idx[ok], fine[ok] * zi[ok])
        bad = ~ok
        if not bad.any():
            break
        if depth == max_depth:
            worst = int(np.argmax(np.where(bad, err, -1.0)))
            raise NumericError(
                "adaptive quadrature did not converge",
                endpoint=complex(zi[worst]),
                interval=(float(a[worst]), float(b[worst])),
                error_estimate=float(err[worst]),
                max_depth=max_depth,
            )
        idx = np.concatenate([idx[bad], idx[bad]])
        a, b = np.concatenate([a[bad], m[bad]]), np.concatenate([m[bad], b[bad]])
        coarse = np.concatenate([left[bad], right[bad]])
    if not np.all(np.isfinite(total)):
        raise NumericError("quadrature produced non-finite values")
    return total.reshape(shape)
