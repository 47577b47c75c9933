"""Grid testers for starlike-of-order-alpha and V(alpha) conditions.

The functionals are

* ``starlike``: ``Re(z f'(z) / f(z))``
* ``V``:        ``Re((z / f(z))^2 f'(z))``

and a function satisfies the class condition when the functional stays
above ``alpha``.  Both are real parts of analytic functions, so their
minima over a closed disc sit on its boundary; the grid clusters radii
toward ``r_max`` accordingly.  Strict inequalities are tested literally
(``min > alpha``, no cushion), so a boundary-limit case such as ``f1`` at
``alpha = 1/2`` reports ``member`` on any finite grid; the report carries
the margin.

For the bi-variants the inverse ``g = f^{-1}`` is taken in closed form when
the function provides one, otherwise from the reverted Taylor series on the
disc where the reversion is validated.  When that disc is smaller than the
grid, the inverse verdict is ``indeterminate`` unless a violation was
already found inside it.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np
from scipy.optimize import minimize

from . import series as ps
from .catalog import AnalyticFunction, from_series
from .errors import ArgumentError, NumericError
from .grid import MEMBERSHIP_GRID, GridSpec

KINDS = ("starlike", "V")
INVERSE_RHO_MAX = 0.999
INVERSE_ORDERS = (32, 64, 128, 256)


@dataclass
class MembershipReport:
    kind: str
    direction: str
    alpha: float
    empirical_min_re: float
    witness: complex
    grid: tuple
    inverse_domain_radius: Optional[float]
    verdict: str

    def to_dict(self) -> dict:
        d = asdict(self)
        d["witness"] = [self.witness.real, self.witness.imag]
        d["grid"] = list(self.grid)
        return d


def _kind(kind: str) -> str:
    k = {"starlike": "starlike", "v": "V", "V": "V"}.get(kind)
    if k is None:
        raise ArgumentError(f"kind must be 'starlike' or 'V', got {kind!r}")
    return k


def functional(f: AnalyticFunction, kind: str, z):
    """``z f'/f`` (starlike) or ``(z/f)^2 f'`` (V) at ``z != 0``."""
    kind = _kind(kind)
    z = np.asarray(z, dtype=complex)
    fz, d1, _ = f(z)
    if kind == "starlike":
        return z * d1 / fz
    q = z / fz
    return q * q * d1


def _minimize_re(q, grid: GridSpec, refine: bool = True):
    r, th, z = grid.points()
    with np.errstate(all="ignore"):
        vals = np.real(q(z))
    if not np.all(np.isfinite(vals)):
        i, j = np.argwhere(~np.isfinite(vals))[0]
        raise NumericError("functional is not finite on the grid", point=complex(z[i, j]))
    # first occurrence: smallest r, then smallest theta
    i, j = np.unravel_index(np.argmin(vals), vals.shape)
    best, wit = float(vals[i, j]), complex(z[i, j])
    if refine:
        r_lo = float(r[0])

        def obj(x):
            rr = min(max(x[0], r_lo), grid.r_max)
            with np.errstate(all="ignore"):
                v = np.real(q(np.array([rr * np.exp(1j * x[1])])))[0]
            return v if np.isfinite(v) else np.inf

        step = max(r[i] - (r[i - 1] if i else 0.0), 1e-9)
        x0 = np.array([r[i], th[j]])
        simplex = np.array([x0, x0 + [-step, 0], x0 + [0, 2 * np.pi / grid.n_theta]])
        res = minimize(obj, x0, method="Nelder-Mead",
                       options={"initial_simplex": simplex, "xatol": 1e-12, "fatol": 1e-15,
                                "maxiter": 400})
        if res.fun < best:
            rr = min(max(res.x[0], r_lo), grid.r_max)
            best, wit = float(res.fun), complex(rr * np.exp(1j * res.x[1]))
    return best, wit


def min_re_functional(f: AnalyticFunction, kind: str, grid: GridSpec = MEMBERSHIP_GRID,
                      refine: bool = True):
    """``(min Re functional, argmin)`` over the polar grid plus one local refinement."""
    return _minimize_re(lambda z: functional(f, kind, z), grid, refine)


def inverse_function(f: AnalyticFunction, order: Optional[int] = None) -> AnalyticFunction:
    """``g = f^{-1}``: closed form when available, else the reverted Taylor series.

    Without ``order`` the series is the one chosen by :func:`series_inverse`.
    """
    if f.inverse is not None:
        def ev(w):
            g = f.inverse(w)
            _, d1, d2 = f(g)
            dg = 1 / d1
            return g, dg, -d2 * dg**3

        return AnalyticFunction(f"{f.name}^-1", ev, inverse=lambda z: f.value(z))
    if order is None:
        _, rs = series_inverse(f)
    else:
        rs = _revert(f, order)
    return from_series(rs, f"{f.name}^-1[series]")


def _round_trip_ok(f, g, rho, n, tol):
    w = rho * np.exp(2j * np.pi * np.arange(n) / n)
    with np.errstate(all="ignore"):
        err = np.abs(f.value(g(w)) - w)
    return bool(np.all(err < tol))


def _revert(f, order):
    try:
        return ps.revert(f.taylor(order))
    except Exception as exc:  # pragma: no cover - reported to caller
        raise NumericError(f"series reversion failed for {f.name}: {exc}") from exc


def _validated_radius(f, g, n_samples, tol, rho_max, iterations):
    if _round_trip_ok(f, g, rho_max, n_samples, tol):
        return rho_max
    lo, hi = 0.0, rho_max
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if _round_trip_ok(f, g, mid, n_samples, tol):
            lo = mid
        else:
            hi = mid
    return lo


def series_inverse(f: AnalyticFunction, orders=INVERSE_ORDERS, n_samples: int = 40,
                   tol: float = 1e-8, rho_max: float = INVERSE_RHO_MAX, iterations: int = 40):
    """``(rho, reverted series)`` for the order in ``orders`` validating the largest ``rho``.

    A higher order is not always better: rounding in the reversion grows
    geometrically with the order, and for inverses with rapidly decaying
    coefficients (``f2``, ``f3``) it overtakes the truncation error.
    Ties go to the lowest order.
    """
    best = None
    for order in orders:
        rs = _revert(f, order)
        rho = _validated_radius(f, lambda w, rs=rs: ps.evaluate(rs, w), n_samples, tol,
                                rho_max, iterations)
        if best is None or rho > best[0]:
            best = (rho, rs)
    return best


def inverse_domain_radius(f: AnalyticFunction, order: Optional[int] = None, n_samples: int = 40,
                          tol: float = 1e-8, rho_max: float = INVERSE_RHO_MAX,
                          iterations: int = 40) -> float:
    """Largest ``rho <= rho_max`` where ``|f(g(w)) - w| < tol`` on ``|w| = rho``.

    With a closed-form inverse the round trip is checked on ``|w| = rho_max``
    and ``rho_max`` is returned; otherwise ``g`` is a reverted series (of
    ``order``, or the best of :data:`INVERSE_ORDERS`) and ``rho`` is found by
    bisection.
    """
    if f.inverse is not None:
        if not _round_trip_ok(f, f.inverse, rho_max, n_samples, tol):
            raise NumericError(f"closed-form inverse of {f.name} fails the round trip")
        return rho_max
    orders = INVERSE_ORDERS if order is None else (order,)
    return series_inverse(f, orders, n_samples, tol, rho_max, iterations)[0]


def _verdict(min_re, alpha, rho=None, r_max=None):
    if min_re <= alpha:
        return "non_member"
    if rho is not None and rho < r_max:
        return "indeterminate"
    return "member"


def check_forward(f: AnalyticFunction, alpha: float, kind: str,
                  grid: GridSpec = MEMBERSHIP_GRID) -> MembershipReport:
    kind = _kind(kind)
    m, w = min_re_functional(f, kind, grid)
    return MembershipReport(kind, "forward", alpha, m, w,
                            (grid.n_r, grid.n_theta, grid.r_max), None, _verdict(m, alpha))


def check_inverse(f: AnalyticFunction, alpha: float, kind: str,
                  grid: GridSpec = MEMBERSHIP_GRID) -> MembershipReport:
    kind = _kind(kind)
    if f.inverse is not None:
        rho = inverse_domain_radius(f)
        g = inverse_function(f)
    else:
        rho, rs = series_inverse(f)
        g = from_series(rs, f"{f.name}^-1[series]")
    r_in = min(rho, grid.r_max)
    inner = grid if r_in >= grid.r_max else grid.with_r_max(r_in)
    m, w = min_re_functional(g, kind, inner)
    return MembershipReport(kind, "inverse", alpha, m, w,
                            (grid.n_r, grid.n_theta, grid.r_max), rho,
                            _verdict(m, alpha, rho, grid.r_max))


def check_bi(f: AnalyticFunction, alpha: float, kind: str, grid: GridSpec = MEMBERSHIP_GRID):
    """Forward and inverse reports for the bi-class condition."""
    if not 0 <= alpha < 1:
        raise ArgumentError(f"alpha must lie in [0, 1), got {alpha}")
    return check_forward(f, alpha, kind, grid), check_inverse(f, alpha, kind, grid)


def verdict_at(report: MembershipReport, alpha: float) -> str:
    """Re-evaluate a cached report at another ``alpha``."""
    return _verdict(report.empirical_min_re, alpha, report.inverse_domain_radius, report.grid[2])


def subordination_check(q, alpha: float, grid: GridSpec = MEMBERSHIP_GRID) -> MembershipReport:
    """``q < F`` for ``q(0) = 1`` reduces to ``Re q > alpha`` on the disc."""
    m, w = _minimize_re(lambda z: np.asarray(q(z), dtype=complex), grid)
    return MembershipReport("subordination", "forward", alpha, m, w,
                            (grid.n_r, grid.n_theta, grid.r_max), None, _verdict(m, alpha))


def inverse_pullback(f: AnalyticFunction):
    """``f(z) / (z f'(z))``, the function subordinate to F for inverse starlikeness."""
    def q(z):
        fz, d1, _ = f(z)
        return fz / (z * d1)

    return q
