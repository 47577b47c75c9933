"""Schwarz functions, the half-plane map F, and class-member generators.

A Schwarz function here is ``phi(z) = eta z^k B(z)`` with ``k >= 1``,
``|eta| <= 1`` and ``B`` a finite Blaschke product.  Members of the classes
are produced by solving the subordination identities for ``f``:

* ``generate_starlike``:          z f'/f        = F(phi)
* ``generate_inverse_starlike``:  f / (z f')    = F(phi)
* ``generate_V``:                 (z/f)^2 f'    = F(phi)

with ``F(w) = (1 + (1 - 2 alpha) w) / (1 - w)``.  Each returned
:class:`~bistar.catalog.AnalyticFunction` carries a closed-form
pre-Schwarzian and an exact Taylor generator built with series arithmetic.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import series as ps
from .catalog import AnalyticFunction
from .errors import ArgumentError, DomainError, PoleError
from .grid import SCHWARZ_GRID, GridSpec
from .quadrature import DEFAULT_MAX_DEPTH, DEFAULT_TOL, integrate_segment

MAX_ZEROS = 4
#: |z| at or below this uses the integrated Taylor series instead of quadrature
SERIES_RADIUS = 0.5
SERIES_ORDER = 64


@dataclass(frozen=True)
class SchwarzFunction:
    """``phi(z) = eta * z**k * prod_i (z - a_i) / (1 - conj(a_i) z)``."""

    k: int = 1
    zeros: tuple = ()
    eta: complex = 1.0
    max_zeros: int = MAX_ZEROS

    def __post_init__(self):
        zs = tuple(complex(a) for a in self.zeros)
        k = int(self.k)
        if k < 1:
            raise ArgumentError("a Schwarz function needs a zero of order k >= 1 at the origin")
        if any(abs(a) >= 1 for a in zs):
            raise ArgumentError("Blaschke zeros must lie inside the unit disc")
        if len(zs) > self.max_zeros:
            raise ArgumentError(f"at most {self.max_zeros} Blaschke zeros allowed")
        if abs(self.eta) > 1 + 1e-15:
            raise ArgumentError("|eta| must not exceed 1")
        # zeros at the origin belong in z^k
        k += sum(1 for a in zs if a == 0)
        zs = tuple(a for a in zs if a != 0)
        object.__setattr__(self, "zeros", zs)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "eta", complex(self.eta))

    @classmethod
    def zero(cls) -> "SchwarzFunction":
        return cls(1, (), 0.0)

    @classmethod
    def power(cls, k: int) -> "SchwarzFunction":
        return cls(k, (), 1.0)

    @property
    def is_zero(self) -> bool:
        return self.eta == 0

    def _blaschke(self, z):
        b = np.ones_like(z)
        for a in self.zeros:
            b = b * (z - a) / (1 - np.conj(a) * z)
        return b

    def _blaschke_prime(self, z):
        out = np.zeros_like(z)
        for i, a in enumerate(self.zeros):
            term = (1 - abs(a) ** 2) / (1 - np.conj(a) * z) ** 2
            for j, b in enumerate(self.zeros):
                if j != i:
                    term = term * (z - b) / (1 - np.conj(b) * z)
            out = out + term
        return out

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return self.eta * z**self.k * self._blaschke(z)

    def derivative(self, z):
        z = np.asarray(z, dtype=complex)
        b = self._blaschke(z)
        db = self._blaschke_prime(z)
        return self.eta * (self.k * z ** (self.k - 1) * b + z**self.k * db)

    def over_power(self, z, m: int):
        """``phi(z) / z**m`` for ``m <= k``, free of cancellation at the origin."""
        if m > self.k and not self.is_zero:
            raise DomainError(f"phi(z)/z^{m} is singular at 0 for k = {self.k}")
        z = np.asarray(z, dtype=complex)
        return self.eta * z ** max(self.k - m, 0) * self._blaschke(z)

    def derivative_at_zero(self) -> complex:
        if self.k > 1:
            return 0j
        return complex(self.eta * np.prod([-a for a in self.zeros]))

    def series(self, order: int) -> ps.TruncatedSeries:
        c = np.zeros(order + 1, dtype=complex)
        if self.k <= order:
            c[self.k] = self.eta
        s = ps.TruncatedSeries(c)
        n = np.arange(order + 1)
        for a in self.zeros:
            geo = ps.TruncatedSeries(np.conj(a) ** n)
            s = ps.mul(s, ps.mul(ps.from_coeffs([-a, 1]).truncate(order), geo))
        return s

    def spec(self) -> str:
        if self.is_zero:
            return "0"
        head = "z" if self.k == 1 else f"z^{self.k}"
        if not self.zeros and self.eta == 1:
            return head
        prefix = "" if self.k == 1 else head + "*"
        zs = ",".join(_fmt_complex(a) for a in self.zeros)
        tail = "" if self.eta == 1 else ":" + _fmt_complex(self.eta)
        return f"{prefix}blaschke:{zs}{tail}"


def _fmt_complex(x: complex) -> str:
    x = complex(x)
    if x.imag == 0:
        return repr(x.real)
    return repr(x).strip("()")


def _parse_complex(tok: str) -> complex:
    try:
        return complex(tok.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise ArgumentError(f"cannot parse complex number {tok!r}") from None


_POWER = re.compile(r"^z(?:\^(\d+))?$")


def parse_phi(text: str, max_zeros: int = MAX_ZEROS) -> SchwarzFunction:
    """Parse ``0``, ``z``, ``z^k``, ``blaschke:a1,a2[:eta]`` or ``z^k*blaschke:...``.

    The ``blaschke`` form carries one factor of ``z`` (so ``phi(0) = 0``);
    a ``z^k*`` prefix raises that to ``z^k``.
    """
    t = text.strip()
    if t in ("0", "zero"):
        return SchwarzFunction.zero()
    m = _POWER.match(t)
    if m:
        return SchwarzFunction.power(int(m.group(1) or 1))
    k = 1
    if "*" in t:
        head, t = t.split("*", 1)
        m = _POWER.match(head.strip())
        if not m:
            raise ArgumentError(f"bad Schwarz-function prefix {head!r}")
        k = int(m.group(1) or 1)
    if not t.startswith("blaschke:"):
        raise ArgumentError(f"unrecognized Schwarz-function spec {text!r}")
    parts = t[len("blaschke:") :].split(":")
    if len(parts) > 2:
        raise ArgumentError(f"too many ':' fields in {text!r}")
    zeros = tuple(_parse_complex(a) for a in parts[0].split(",") if a.strip())
    eta = _parse_complex(parts[1]) if len(parts) == 2 else 1.0
    return SchwarzFunction(k, zeros, eta, max_zeros=max_zeros)


def random_schwarz(rng, max_zeros: int = MAX_ZEROS, k_max: int = 3, min_k: int = 1,
                   zero_radius: float = 0.9) -> SchwarzFunction:
    """Random ``eta z^k B(z)`` with unimodular ``eta`` and zeros uniform in ``|a| < zero_radius``."""
    k = int(rng.integers(min_k, k_max + 1))
    nz = int(rng.integers(0, max_zeros + 1))
    rad = zero_radius * np.sqrt(rng.uniform(0, 1, nz))
    zeros = tuple(rad * np.exp(2j * np.pi * rng.uniform(0, 1, nz)))
    eta = np.exp(2j * np.pi * rng.uniform())
    return SchwarzFunction(k, zeros, eta, max_zeros=max_zeros)


def _check_inside(z):
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) >= 1):
        raise DomainError("Schwarz functions are evaluated only inside the unit disc")
    return z


def eval_schwarz(phi: SchwarzFunction, z):
    """``(phi(z), phi'(z))``; raises :class:`DomainError` for ``|z| >= 1``."""
    z = _check_inside(z)
    return phi(z), phi.derivative(z)


def schwarz_pick_residual(phi: SchwarzFunction, z):
    """``(1 - |phi|^2) / (1 - |z|^2) - |phi'|``, nonnegative for every Schwarz function."""
    z = _check_inside(z)
    p, dp = phi(z), phi.derivative(z)
    return (1 - np.abs(p) ** 2) / (1 - np.abs(z) ** 2) - np.abs(dp)


def certify(phi: SchwarzFunction, grid: GridSpec = SCHWARZ_GRID) -> dict:
    """Worst Schwarz-Pick residual and worst ``|phi(z)| - |z|`` over a polar grid."""
    _, _, z = grid.points()
    res = schwarz_pick_residual(phi, z)
    excess = np.abs(phi(z)) - np.abs(z)
    return {"min_pick_residual": float(res.min()), "max_modulus_excess": float(excess.max())}


def halfplane_map(alpha: float, w):
    """``F(w) = (1 + (1 - 2 alpha) w) / (1 - w)``, mapping the disc onto ``Re > alpha``."""
    w = np.asarray(w, dtype=complex)
    if np.any(w == 1):
        raise DomainError("F has a pole at w = 1")
    out = (1 + (1 - 2 * alpha) * w) / (1 - w)
    return complex(out) if out.ndim == 0 else out


def _check_alpha(alpha):
    if not 0 <= alpha < 1:
        raise ArgumentError(f"alpha must lie in [0, 1), got {alpha}")


class _Primitive:
    """``int_0^z g(t) dt`` with a Taylor fast path near the origin."""

    def __init__(self, integrand, integrand_series, tol, max_depth):
        self.integrand = integrand
        self.series = ps.integrate(integrand_series)
        self.tol = tol
        self.max_depth = max_depth

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.empty_like(z)
        near = np.abs(z) <= SERIES_RADIUS
        if near.any():
            out[near] = ps.evaluate(self.series, z[near])
        if (~near).any():
            out[~near] = integrate_segment(self.integrand, z[~near], self.tol, self.max_depth)
        return out


def _base_params(cls_name, alpha, phi):
    return {"class": cls_name, "alpha": alpha, "phi": phi}


def generate_starlike(alpha: float, phi: SchwarzFunction, tol: float = DEFAULT_TOL,
                      max_depth: int = DEFAULT_MAX_DEPTH) -> AnalyticFunction:
    """``f`` with ``z f'/f = F(phi)``, so ``f`` is starlike of order ``alpha``.

    ``f(z) = z exp(I(z))`` where ``I' = (F(phi) - 1)/z = kappa (phi/z)/(1 - phi)``
    and ``kappa = 2 (1 - alpha)``.
    """
    _check_alpha(alpha)
    kap, c = 2 * (1 - alpha), 1 - 2 * alpha

    def g(t):
        return kap * phi.over_power(t, 1) / (1 - phi(t))

    def g_series(n):
        p = phi.series(n + 1)
        q = ps.TruncatedSeries(p.coeffs[1:])
        return ps.scale(ps.divide(q, ps.add(1, -ps.TruncatedSeries(p.coeffs[:-1]))), kap)

    prim = _Primitive(g, g_series(SERIES_ORDER), tol, max_depth)

    def tf(z):
        p, dp = phi(z), phi.derivative(z)
        return kap * phi.over_power(z, 1) / (1 - p) + kap * dp / ((1 - p) * (1 + c * p))

    def ev(z):
        e = np.exp(prim(z))
        fz = z * e
        d1 = e * halfplane_map(alpha, phi(z))
        return fz, d1, tf(z) * d1

    def taylor(n):
        integ = ps.integrate(g_series(n))
        return ps.mul(ps.identity(n), ps.exp(integ))

    return AnalyticFunction(
        f"starlike[{alpha:g},{phi.spec()}]", ev, taylor_generator=taylor,
        pre_schwarzian_fn=tf, params=_base_params("starlike", alpha, phi),
    )


def generate_inverse_starlike(alpha: float, phi: SchwarzFunction, tol: float = DEFAULT_TOL,
                              max_depth: int = DEFAULT_MAX_DEPTH) -> AnalyticFunction:
    """``f`` with ``f/(z f') = F(phi)``, i.e. ``f'/f = (1 - phi) / (z (1 + (1-2 alpha) phi))``.

    The pre-Schwarzian is
    ``2(alpha-1) phi / (z (1 + c phi)) + 2(alpha-1) phi' / ((1 - phi)(1 + c phi))``
    with ``c = 1 - 2 alpha``.
    """
    _check_alpha(alpha)
    kap, c = 2 * (1 - alpha), 1 - 2 * alpha

    def guard(p):
        d = 1 + c * p
        if np.any(d == 0):
            raise PoleError("1 + (1 - 2 alpha) phi vanished", alpha=alpha, phi=phi.spec())
        return d

    def g(t):
        p = phi(t)
        return -kap * phi.over_power(t, 1) / guard(p)

    def g_series(n):
        p = phi.series(n + 1)
        q = ps.TruncatedSeries(p.coeffs[1:])
        den = ps.add(1, ps.scale(ps.TruncatedSeries(p.coeffs[:-1]), c))
        return ps.scale(ps.divide(q, den), -kap)

    prim = _Primitive(g, g_series(SERIES_ORDER), tol, max_depth)

    def tf(z):
        p, dp = phi(z), phi.derivative(z)
        d = guard(p)
        return 2 * (alpha - 1) * phi.over_power(z, 1) / d + 2 * (alpha - 1) * dp / ((1 - p) * d)

    def ev(z):
        e = np.exp(prim(z))
        p = phi(z)
        d1 = e * (1 - p) / guard(p)
        return z * e, d1, tf(z) * d1

    def taylor(n):
        return ps.mul(ps.identity(n), ps.exp(ps.integrate(g_series(n))))

    return AnalyticFunction(
        f"inv-starlike[{alpha:g},{phi.spec()}]", ev, taylor_generator=taylor,
        pre_schwarzian_fn=tf, params=_base_params("inv-starlike", alpha, phi),
    )


def generate_V(alpha: float, phi: SchwarzFunction, tol: float = DEFAULT_TOL,
               max_depth: int = DEFAULT_MAX_DEPTH, pole_check_radius: Optional[float] = 0.99,
               ) -> AnalyticFunction:
    """``f`` with ``(z/f)^2 f' = F(phi)``.

    ``1/f = 1/z - J(z)`` with ``J' = (F(phi) - 1)/z^2``, which needs
    ``phi'(0) = 0``: the left side has no linear term.  Writing ``h = f/z``,
    ``f' = F(phi) h^2`` and

        f''/f' = 2 (f'/f - 1/z) + (1-2 alpha) phi'/(1 + (1-2 alpha) phi) + phi'/(1 - phi)

    with ``f'/f - 1/z = h (kappa (phi/z)/(1 - phi) + J)``.

    A pole of ``f`` inside ``|z| < pole_check_radius`` is counted by the
    argument principle and stored as ``diagnostics["pole_count"]``;
    evaluating at a pole raises :class:`PoleError`.
    """
    _check_alpha(alpha)
    d0 = phi.derivative_at_zero()
    if abs(d0) > 1e-12:
        raise DomainError(
            f"generate_V needs phi'(0) = 0, got |phi'(0)| = {abs(d0):.3g}"
        )
    kap, c = 2 * (1 - alpha), 1 - 2 * alpha

    def g(t):
        return kap * phi.over_power(t, 2) / (1 - phi(t))

    def g_series(n):
        p = phi.series(n + 2)
        q = ps.TruncatedSeries(p.coeffs[2:])
        return ps.scale(ps.divide(q, ps.add(1, -ps.TruncatedSeries(p.coeffs[:-2]))), kap)

    prim = _Primitive(g, g_series(SERIES_ORDER), tol, max_depth)

    def h_and_j(z):
        j = prim(z)
        den = 1 - z * j
        if np.any(np.abs(den) < 1e-12):
            bad = np.asarray(z)[np.abs(den) < 1e-12].ravel()[0]
            raise PoleError("generated V function has a pole", point=complex(bad))
        return 1 / den, j

    def tf(z):
        h, j = h_and_j(z)
        p, dp = phi(z), phi.derivative(z)
        logd = h * (kap * phi.over_power(z, 1) / (1 - p) + j)
        return 2 * logd + c * dp / (1 + c * p) + dp / (1 - p)

    def ev(z):
        h, _ = h_and_j(z)
        d1 = halfplane_map(alpha, phi(z)) * h * h
        return z * h, d1, tf(z) * d1

    def taylor(n):
        jn = ps.integrate(g_series(n))
        den = ps.add(1, -ps.mul(ps.identity(n), jn))
        return ps.mul(ps.identity(n), ps.reciprocal(den))

    diagnostics = {}
    if pole_check_radius is not None:
        diagnostics["pole_count"] = _winding(
            lambda z: 1 - z * prim(z), pole_check_radius
        )
        diagnostics["pole_check_radius"] = pole_check_radius

    return AnalyticFunction(
        f"V[{alpha:g},{phi.spec()}]", ev, taylor_generator=taylor, pre_schwarzian_fn=tf,
        params=_base_params("v", alpha, phi), diagnostics=diagnostics,
    )


def _winding(func, radius: float, n: int = 2048) -> int:
    """Zeros of an analytic ``func`` inside ``|z| < radius`` by the argument principle."""
    z = radius * np.exp(2j * np.pi * np.arange(n + 1) / n)
    v = func(z)
    darg = np.angle(v[1:] / v[:-1])
    return int(round(darg.sum() / (2 * math.pi)))


def v_substituted_pre_schwarzian(f: AnalyticFunction, z):
    """The V-class pre-Schwarzian in the substituted form

        2 (f/z) (F(phi)/z - 1) + (1-2 alpha) phi'/(1 + (1-2 alpha) phi) + phi'/(1 - phi)

    evaluated for a function from :func:`generate_V`.  Used to test that
    form against the true ``f''/f'``.
    """
    if f.params.get("class") != "v":
        raise ArgumentError("needs a function produced by generate_V")
    alpha, phi = f.params["alpha"], f.params["phi"]
    z = np.asarray(z, dtype=complex)
    c = 1 - 2 * alpha
    p, dp = phi(z), phi.derivative(z)
    fz = f.value(z)
    return 2 * (fz / z) * (halfplane_map(alpha, p) / z - 1) + c * dp / (1 + c * p) + dp / (1 - p)


GENERATORS = {
    "starlike": generate_starlike,
    "inv-starlike": generate_inverse_starlike,
    "v": generate_V,
}


def generate(cls_name: str, alpha: float, phi: SchwarzFunction, **kw) -> AnalyticFunction:
    try:
        gen = GENERATORS[cls_name]
    except KeyError:
        raise ArgumentError(f"unknown class {cls_name!r}; expected one of {sorted(GENERATORS)}") from None
    return gen(alpha, phi, **kw)

