"""Truncated complex power series.

A :class:`TruncatedSeries` of order ``N`` holds the Maclaurin coefficients
``c[0] .. c[N]`` of a function.  Everything here works modulo ``z**(N+1)``:
terms beyond the order are silently discarded, never reported as an error.
When two operands of different order meet, the shorter one is padded with
zeros and the result carries the larger order.

Usage::

    >>> k = TruncatedSeries([0, 1, 2, 3, 4, 5])      # Koebe function to order 5
    >>> revert(k).coeffs.real
    array([  0.,   1.,  -2.,   5., -14.,  42.])

Series values are immutable; every operation returns a new series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import ArgumentError, DomainError

DEFAULT_ORDER = 32

Scalar = Union[int, float, complex]


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """Coefficients ``c[0..N]`` of a polynomial truncated at order ``N``."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        if c.size < 2:
            raise ArgumentError(
                f"a truncated series needs at least two coefficients, got {c.size}"
            )
        if not np.all(np.isfinite(c)):
            raise ArgumentError("series coefficients must be finite")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def __len__(self):
        return self.coeffs.size

    def __getitem__(self, n):
        return self.coeffs[n]

    def __repr__(self):
        return f"TruncatedSeries({np.array2string(self.coeffs, precision=6)})"

    def is_normalized(self, tol: float = 0.0) -> bool:
        """True for class-A form ``z + a2 z^2 + ...``."""
        return abs(self.coeffs[0]) <= tol and abs(self.coeffs[1] - 1) <= tol

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(_pad(self.coeffs, order)[: order + 1])

    def __call__(self, z):
        return evaluate(self, z)

    def __add__(self, other):
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        return add(self, scale(_coerce(other, self.order), -1))

    def __rsub__(self, other):
        return add(scale(self, -1), other)

    def __neg__(self):
        return scale(self, -1)

    def __mul__(self, other):
        if np.isscalar(other):
            return scale(self, other)
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if np.isscalar(other):
            return scale(self, 1 / other)
        return divide(self, other)


def _pad(c: np.ndarray, order: int) -> np.ndarray:
    if c.size >= order + 1:
        return c
    return np.concatenate([c, np.zeros(order + 1 - c.size, dtype=complex)])


def _coerce(x, order: int) -> TruncatedSeries:
    if isinstance(x, TruncatedSeries):
        return x
    if np.isscalar(x):
        return constant(x, order)
    return TruncatedSeries(x)


def _aligned(a, b):
    a = _coerce(a, getattr(b, "order", 1))
    b = _coerce(b, a.order)
    n = max(a.order, b.order)
    return _pad(a.coeffs, n), _pad(b.coeffs, n), n


def identity(order: int = DEFAULT_ORDER) -> TruncatedSeries:
    c = np.zeros(order + 1, dtype=complex)
    c[1] = 1
    return TruncatedSeries(c)


def constant(value: Scalar, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    c = np.zeros(order + 1, dtype=complex)
    c[0] = value
    return TruncatedSeries(c)


def add(a, b) -> TruncatedSeries:
    x, y, _ = _aligned(a, b)
    return TruncatedSeries(x + y)


def scale(a: TruncatedSeries, factor: Scalar) -> TruncatedSeries:
    return TruncatedSeries(a.coeffs * factor)


def mul(a, b) -> TruncatedSeries:
    x, y, n = _aligned(a, b)
    return TruncatedSeries(np.convolve(x, y)[: n + 1])


def derive(a: TruncatedSeries) -> TruncatedSeries:
    """Term-wise derivative; the order is kept and the top coefficient becomes 0."""
    n = np.arange(1, a.order + 1)
    c = np.zeros_like(a.coeffs)
    c[:-1] = n * a.coeffs[1:]
    return TruncatedSeries(c)


def integrate(a: TruncatedSeries, constant_term: Scalar = 0) -> TruncatedSeries:
    """Term-wise antiderivative with the given value at 0; the top input term drops out."""
    c = np.empty_like(a.coeffs)
    c[0] = constant_term
    c[1:] = a.coeffs[:-1] / np.arange(1, a.order + 1)
    return TruncatedSeries(c)


def reciprocal(a: TruncatedSeries) -> TruncatedSeries:
    c = a.coeffs
    if c[0] == 0:
        raise DomainError("reciprocal of a series with zero constant term")
    b = np.zeros_like(c)
    b[0] = 1 / c[0]
    for n in range(1, c.size):
        b[n] = -np.dot(c[1 : n + 1], b[n - 1 :: -1][:n]) / c[0]
    return TruncatedSeries(b)


def divide(a, b) -> TruncatedSeries:
    return mul(a, reciprocal(_coerce(b, a.order)))


def arithmetic(op: str, a, b=None) -> TruncatedSeries:
    """Dispatch by name: ``add``, ``mul``, ``scale``, ``derive`` or ``integrate``.

    For ``integrate`` the optional ``b`` is the constant term of the result.
    """
    if op == "add":
        return add(a, b)
    if op == "mul":
        return mul(a, b)
    if op == "scale":
        return scale(_coerce(a, 1), b)
    if op == "derive":
        return derive(_coerce(a, 1))
    if op == "integrate":
        return integrate(_coerce(a, 1), 0 if b is None else b)
    raise ArgumentError(f"unknown series operation {op!r}")


def compose(outer, inner) -> TruncatedSeries:
    """Coefficients of ``outer(inner(z))`` by Horner's scheme on series."""
    x, y, n = _aligned(outer, inner)
    if y[0] != 0:
        raise DomainError("inner series of a composition must have zero constant term")
    res = np.zeros(n + 1, dtype=complex)
    res[0] = x[n]
    for k in range(n - 1, -1, -1):
        res = np.convolve(res, y)[: n + 1]
        res[0] += x[k]
    return TruncatedSeries(res)


def _check_revertible(s: TruncatedSeries):
    if s.coeffs[0] != 0:
        raise DomainError("reversion needs a zero constant term")
    if s.coeffs[1] == 0:
        raise DomainError("reversion needs a nonzero linear coefficient")


def revert(s: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse by Newton iteration on series.

    Each step ``R <- R - (S(R) - w) / S'(R)`` doubles the number of correct
    coefficients, so ``ceil(log2(N)) + 1`` steps reach order ``N``.
    """
    _check_revertible(s)
    n = s.order
    w = identity(n)
    r = scale(w, 1 / s.coeffs[1])
    ds = derive(s)
    for _ in range(max(1, math.ceil(math.log2(n))) + 1):
        resid = compose(s, r) - w
        r = r - divide(resid, compose(ds, r))
    return r


def revert_recurrence(s: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse by the triangular recurrence, one coefficient at a time.

    Slower than :func:`revert` (quartic in the order) but shares no code path
    with it, so the two can check each other.
    """
    _check_revertible(s)
    a1 = s.coeffs[1]
    b = np.zeros(s.order + 1, dtype=complex)
    b[1] = 1 / a1
    for k in range(2, s.order + 1):
        t = compose(s, TruncatedSeries(b)).coeffs[k]
        b[k] = -t / a1
    return TruncatedSeries(b)


def exp(s: TruncatedSeries) -> TruncatedSeries:
    """``exp`` of a series via ``E' = S' E``."""
    c = s.coeffs
    kc = np.arange(c.size) * c
    e = np.zeros_like(c)
    e[0] = np.exp(c[0])
    for n in range(1, c.size):
        e[n] = np.dot(kc[1 : n + 1], e[n - 1 :: -1][:n]) / n
    return TruncatedSeries(e)


def log(s: TruncatedSeries) -> TruncatedSeries:
    """Principal ``log`` of a series via ``S L' = S'``; requires ``c[0] != 0``."""
    c = s.coeffs
    if c[0] == 0:
        raise DomainError("log of a series with zero constant term")
    out = np.zeros_like(c)
    out[0] = np.log(c[0])
    kl = np.zeros_like(c)
    for n in range(1, c.size):
        acc = n * c[n] - np.dot(kl[1:n], c[n - 1 : 0 : -1])
        out[n] = acc / (n * c[0])
        kl[n] = n * out[n]
    return TruncatedSeries(out)


def evaluate(s: TruncatedSeries, z):
    """Horner evaluation of the truncated polynomial; ``z`` may be an array."""
    out = npoly.polyval(np.asarray(z, dtype=complex), s.coeffs)
    if np.ndim(out) == 0:
        return complex(out)
    return out


def from_coeffs(values: Sequence[Scalar]) -> TruncatedSeries:
    return TruncatedSeries(np.asarray(list(values), dtype=complex))
