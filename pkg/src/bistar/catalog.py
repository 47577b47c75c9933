"""Closed-form normalized analytic functions on the unit disc.

All entries satisfy ``f(0) = 0`` and ``f'(0) = 1``.  Powers and logarithms
use principal branches; ``1 - z`` stays in the right half-plane for
``|z| < 1`` so every entry is single-valued on the disc.

========== =================================== ===========================
name       f(z)                                inverse
========== =================================== ===========================
identity   z                                   w
koebe      z / (1 - z)^2                       (series only)
gen_koebe  z / (1 - z)^(2 (1 - alpha))         (series only)
half_plane z / (1 - z)                         w / (1 + w)
log_map    -log(1 - z)                         (exp(w) - 1) / exp(w)
atanh_map  log((1 + z) / (1 - z)) / 2          (exp(2w) - 1) / (exp(2w) + 1)
========== =================================== ===========================

``f1``, ``f2`` and ``f3`` are accepted as aliases of the last three.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import series as ps
from .errors import ArgumentError, UnsupportedOperationError

Triple = tuple  # (f, f', f'') arrays


@dataclass(frozen=True, eq=False)
class AnalyticFunction:
    """Evaluator bundle for a normalized analytic function.

    ``evaluator`` maps a complex array to ``(f, f', f'')``.  Optional pieces:
    a closed-form ``inverse``, an exact ``taylor_generator`` (order -> series),
    and a closed-form ``pre_schwarzian_fn`` (``f''/f'``) that bypasses the
    quotient of derivatives.
    """

    name: str
    evaluator: Callable[[np.ndarray], Triple]
    inverse: Optional[Callable[[np.ndarray], np.ndarray]] = None
    taylor_generator: Optional[Callable[[int], ps.TruncatedSeries]] = None
    pre_schwarzian_fn: Optional[Callable[[np.ndarray], np.ndarray]] = None
    params: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)

    def __call__(self, z):
        return self.evaluator(np.asarray(z, dtype=complex))

    def value(self, z):
        return self(z)[0]

    @property
    def has_inverse(self) -> bool:
        return self.inverse is not None

    def inverse_eval(self, w):
        if self.inverse is None:
            raise UnsupportedOperationError(f"{self.name} has no closed-form inverse")
        return self.inverse(np.asarray(w, dtype=complex))

    def taylor(self, order: int = ps.DEFAULT_ORDER) -> ps.TruncatedSeries:
        if self.taylor_generator is not None:
            return self.taylor_generator(order)
        return taylor_from_samples(self.value, order)


def taylor_from_samples(func, order: int, radius: float = 0.5, n_samples: Optional[int] = None):
    """Maclaurin coefficients by discrete Fourier analysis on ``|z| = radius``.

    Rounding in the samples is amplified by ``radius**-n`` in the n-th
    coefficient: at radius 0.5 expect about ``1e-16 * 2**n`` absolute error.
    """
    m = n_samples or max(256, 4 * (order + 1))
    z = radius * np.exp(2j * np.pi * np.arange(m) / m)
    c = np.fft.fft(np.asarray(func(z), dtype=complex)) / m
    c = c[: order + 1] / radius ** np.arange(order + 1)
    return ps.TruncatedSeries(c)


def _identity(z):
    return z, np.ones_like(z), np.zeros_like(z)


def identity() -> AnalyticFunction:
    return AnalyticFunction(
        "identity",
        _identity,
        inverse=lambda w: w,
        taylor_generator=ps.identity,
        pre_schwarzian_fn=lambda z: np.zeros_like(z),
    )


def koebe() -> AnalyticFunction:
    def ev(z):
        u = 1 - z
        return z / u**2, (1 + z) / u**3, (4 + 2 * z) / u**4

    return AnalyticFunction(
        "koebe",
        ev,
        taylor_generator=lambda n: ps.TruncatedSeries(np.arange(n + 1)),
        pre_schwarzian_fn=lambda z: (4 + 2 * z) / ((1 + z) * (1 - z)),
    )


def gen_koebe(alpha: float) -> AnalyticFunction:
    """``k_alpha(z) = z (1 - z)^(-2(1 - alpha))``, extremal for starlike order alpha."""
    if not 0 <= alpha < 1:
        raise ArgumentError(f"alpha must lie in [0, 1), got {alpha}")
    p = 2 * (1 - alpha)

    def ev(z):
        u = 1 - z
        upow = u ** (-p)
        f = z * upow
        d1 = upow / u * (1 + (p - 1) * z)
        t = (p + 1) / u + (p - 1) / (1 + (p - 1) * z)
        return f, d1, t * d1

    def coeffs(n):
        # z (1-z)^-p = sum_k (p)_(k-1)/(k-1)! z^k
        c = np.zeros(n + 1)
        c[1] = 1
        for k in range(1, n):
            c[k + 1] = c[k] * (p + k - 1) / k
        return ps.TruncatedSeries(c)

    return AnalyticFunction(
        f"gen_koebe:{alpha:g}",
        ev,
        taylor_generator=coeffs,
        pre_schwarzian_fn=lambda z: (p + 1) / (1 - z) + (p - 1) / (1 + (p - 1) * z),
        params={"alpha": alpha},
    )


def half_plane() -> AnalyticFunction:
    def ev(z):
        u = 1 - z
        return z / u, 1 / u**2, 2 / u**3

    return AnalyticFunction(
        "f1",
        ev,
        inverse=lambda w: w / (1 + w),
        taylor_generator=lambda n: ps.TruncatedSeries(np.r_[0.0, np.ones(n)]),
        pre_schwarzian_fn=lambda z: 2 / (1 - z),
    )


def log_map() -> AnalyticFunction:
    def ev(z):
        u = 1 - z
        return -np.log(u), 1 / u, 1 / u**2

    def coeffs(n):
        k = np.arange(1, n + 1)
        return ps.TruncatedSeries(np.r_[0.0, 1.0 / k])

    return AnalyticFunction(
        "f2",
        ev,
        inverse=lambda w: (np.exp(w) - 1) / np.exp(w),
        taylor_generator=coeffs,
        pre_schwarzian_fn=lambda z: 1 / (1 - z),
    )


def atanh_map() -> AnalyticFunction:
    def ev(z):
        q = 1 - z * z
        return 0.5 * np.log((1 + z) / (1 - z)), 1 / q, 2 * z / q**2

    def coeffs(n):
        c = np.zeros(n + 1)
        c[1::2] = 1.0 / np.arange(1, n + 1, 2)
        return ps.TruncatedSeries(c)

    return AnalyticFunction(
        "f3",
        ev,
        inverse=lambda w: (np.exp(2 * w) - 1) / (np.exp(2 * w) + 1),
        taylor_generator=coeffs,
        pre_schwarzian_fn=lambda z: 2 * z / (1 - z * z),
    )


def rotate(f: AnalyticFunction, theta: float) -> AnalyticFunction:
    """The rotation ``exp(-i theta) f(exp(i theta) z)``, again normalized."""
    e = np.exp(1j * theta)

    def ev(z):
        v, d1, d2 = f(e * z)
        return v / e, d1, e * d2

    inv = None
    if f.inverse is not None:
        inv = lambda w: f.inverse(e * w) / e  # noqa: E731

    def coeffs(n):
        c = f.taylor(n).coeffs
        return ps.TruncatedSeries(c * e ** (np.arange(n + 1) - 1))

    pre = None
    if f.pre_schwarzian_fn is not None:
        pre = lambda z: e * f.pre_schwarzian_fn(e * z)  # noqa: E731

    return AnalyticFunction(
        f"{f.name}@rot{theta:g}", ev, inv, coeffs, pre, dict(f.params, theta=theta)
    )


def from_series(s: ps.TruncatedSeries, name: str = "series") -> AnalyticFunction:
    """Evaluator for a truncated polynomial, e.g. a reverted series."""
    d1 = ps.derive(s)
    d2 = ps.derive(d1)
    return AnalyticFunction(
        name,
        lambda z: (ps.evaluate(s, z), ps.evaluate(d1, z), ps.evaluate(d2, z)),
        taylor_generator=lambda n: s.truncate(n),
    )


_NAMED = {
    "identity": identity,
    "koebe": koebe,
    "half_plane": half_plane,
    "f1": half_plane,
    "log_map": log_map,
    "f2": log_map,
    "atanh_map": atanh_map,
    "f3": atanh_map,
}

NAMES = ("identity", "koebe", "gen_koebe", "half_plane", "log_map", "atanh_map", "f1", "f2", "f3")


def make_named(name: str, alpha: Optional[float] = None) -> AnalyticFunction:
    """Look up a catalog entry; ``gen_koebe`` needs ``alpha`` (or ``gen_koebe:<alpha>``)."""
    if name.startswith("gen_koebe:"):
        name, a = name.split(":", 1)
        try:
            alpha = float(a)
        except ValueError:
            raise ArgumentError(f"bad alpha in {name}:{a}") from None
    if name == "gen_koebe":
        if alpha is None:
            raise ArgumentError("gen_koebe needs an alpha")
        return gen_koebe(alpha)
    try:
        return _NAMED[name]()
    except KeyError:
        raise ArgumentError(f"unknown catalog function {name!r}") from None
