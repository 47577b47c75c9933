"""Norm bounds for bi-starlike classes and an audit of measured norms against them.

Bound names (all functions of ``alpha`` in ``[0, 1)``):

===================  =========================================================
``yamashita``        ``6 - 4 alpha``, sharp for starlike functions of order alpha
``theorem1_stated``  6 (alpha = 0); min(6 - 4a, 4(1 - a)/a) (0 < a < 1/2);
                     4 (a = 1/2); 2 (1/2 < a < 1)
``derivation_phi``   ``4 (1 - a) / (1 - |1 - 2a|)``; +inf at a = 0
``derivation_case2`` ``2 (1 - a) / a`` on (0, 1/2), undefined (nan) elsewhere
``majorant_sup``     true supremum over t in [0, 1) of the radial majorant h(t; a)
``rahmatan_A``       ``min(6 - 4a, 4a + 2)``
``rahmatan_B``       ``min(10 - 8a, 6 - 8a)``, negative for a > 3/4
===================  =========================================================

At ``a = 1/2`` the formula for ``derivation_phi`` gives 2 while the
piecewise statement assigns that case the value 4; both are exposed, under
their own names.

The audit flags a *theorem violation* when a class member's measured norm
exceeds a bound of a theorem about that class by more than
:data:`VIOLATION_TOL`; functions whose measured norm is zero are never
flagged.  Comparisons with ``derivation_case2``,
``derivation_phi`` and ``majorant_sup`` are *derivation-consistency* flags,
kept apart from theorem violations.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .catalog import AnalyticFunction, make_named
from .errors import ArgumentError, DomainError
from .grid import MEMBERSHIP_GRID, NORM_GRID, GridSpec, golden_max
from .membership import MembershipReport, check_bi, verdict_at
from .norms import NormEstimate, norm_estimate

VIOLATION_TOL = 1e-6

BOUND_NAMES = (
    "yamashita",
    "theorem1_stated",
    "derivation_phi",
    "derivation_case2",
    "majorant_sup",
    "rahmatan_A",
    "rahmatan_B",
)

# bounds claimed for each class, and which membership they need
STARLIKE_THEOREMS = ("theorem1_stated", "rahmatan_A")
V_THEOREMS = ("rahmatan_B",)
DERIVATION_BOUNDS = ("derivation_case2", "derivation_phi", "majorant_sup")


def _check_alpha(alpha):
    if not 0 <= alpha < 1:
        raise ArgumentError(f"alpha must lie in [0, 1), got {alpha}")


def yamashita(alpha: float) -> float:
    return 6 - 4 * alpha


def theorem1_stated(alpha: float) -> float:
    if alpha == 0:
        return 6.0
    if alpha < 0.5:
        return min(6 - 4 * alpha, 4 * (1 - alpha) / alpha)
    if alpha == 0.5:
        return 4.0
    return 2.0


def derivation_phi(alpha: float) -> float:
    den = 1 - abs(1 - 2 * alpha)
    return math.inf if den == 0 else 4 * (1 - alpha) / den


def derivation_case2(alpha: float) -> float:
    if 0 < alpha < 0.5:
        return 2 * (1 - alpha) / alpha
    return math.nan


def rahmatan_A(alpha: float) -> float:
    return min(6 - 4 * alpha, 4 * alpha + 2)


def rahmatan_B(alpha: float) -> float:
    return min(10 - 8 * alpha, 6 - 8 * alpha)


def majorant(t, alpha: float):
    """``h(t; alpha) = 2(1-alpha) [(1 - t^2) + (1 + t)] / (1 - |1 - 2 alpha| t)``."""
    t = np.asarray(t, dtype=float)
    den = 1 - abs(1 - 2 * alpha) * t
    if np.any(den <= 0):
        raise DomainError("majorant denominator 1 - |1 - 2 alpha| t must be positive")
    h = 2 * (1 - alpha) * ((1 - t * t) + (1 + t)) / den
    return float(h) if h.ndim == 0 else h


def majorant_sup(alpha: float, n_grid: int = 4096):
    """``(sup_{0 <= t < 1} h(t; alpha), argmax)``.

    ``h`` extends continuously to ``t = 1`` for ``alpha > 0``; an argmax of
    1.0 means the supremum is the limit ``t -> 1``.  At ``alpha = 0``
    ``h`` is unbounded and ``(inf, 1.0)`` is returned.
    """
    _check_alpha(alpha)
    if alpha == 0:
        return math.inf, 1.0
    t = np.linspace(0.0, 1.0, n_grid + 1)
    h = majorant(t, alpha)
    k = int(np.argmax(h))
    lo, hi = t[max(k - 1, 0)], t[min(k + 1, n_grid)]
    tb, hb = golden_max(lambda s: majorant(s, alpha), lo, hi, tol=1e-13)
    if h[k] >= hb:
        tb, hb = float(t[k]), float(h[k])
    return float(hb), float(tb)


_BOUNDS = {
    "yamashita": yamashita,
    "theorem1_stated": theorem1_stated,
    "derivation_phi": derivation_phi,
    "derivation_case2": derivation_case2,
    "majorant_sup": lambda a: majorant_sup(a)[0],
    "rahmatan_A": rahmatan_A,
    "rahmatan_B": rahmatan_B,
}


def bound_value(name: str, alpha: float) -> float:
    _check_alpha(alpha)
    try:
        return float(_BOUNDS[name](alpha))
    except KeyError:
        raise ArgumentError(f"unknown bound {name!r}; expected one of {BOUND_NAMES}") from None


@dataclass
class BoundProfile:
    alpha: float
    yamashita: float
    theorem1_stated: float
    derivation_phi: float
    derivation_case2: float
    majorant_sup: float
    majorant_argmax: float
    rahmatan_A: float
    rahmatan_B: float

    @classmethod
    def at(cls, alpha: float) -> "BoundProfile":
        _check_alpha(alpha)
        ms, mt = majorant_sup(alpha)
        return cls(alpha, yamashita(alpha), theorem1_stated(alpha), derivation_phi(alpha),
                   derivation_case2(alpha), ms, mt, rahmatan_A(alpha), rahmatan_B(alpha))

    def get(self, name: str) -> float:
        return getattr(self, name)


@dataclass
class AuditRow:
    function: str
    alpha: float
    cls: str
    forward: Optional[MembershipReport]
    inverse: Optional[MembershipReport]
    norm: Optional[NormEstimate]
    bounds: BoundProfile
    violations: list = field(default_factory=list)
    derivation_flags: list = field(default_factory=list)
    error: Optional[str] = None

    @property
    def bi_member(self) -> bool:
        return (self.forward is not None and self.inverse is not None
                and self.forward.verdict == "member" and self.inverse.verdict == "member")

    def recompute_flags(self):
        """Theorem violations and derivation flags from the row's own fields."""
        self.violations, self.derivation_flags = _flags(self)
        return self


def _exceeds(value: float, bound: float) -> bool:
    return not math.isnan(bound) and value > bound + VIOLATION_TOL


def _flags(row: AuditRow):
    # a zero measured norm is never counted against a bound, even a negative one
    if row.norm is None or row.forward is None or row.norm.value <= VIOLATION_TOL:
        return [], []
    v = row.norm.value
    b = row.bounds
    theorem, deriv = [], []
    if row.cls == "starlike":
        if row.forward.verdict == "member" and _exceeds(v, b.yamashita):
            theorem.append("yamashita")
        if row.bi_member:
            theorem += [n for n in STARLIKE_THEOREMS if _exceeds(v, b.get(n))]
            deriv += [n for n in DERIVATION_BOUNDS if _exceeds(v, b.get(n))]
    elif row.cls == "V" and row.bi_member:
        theorem += [n for n in V_THEOREMS if _exceeds(v, b.get(n))]
    return theorem, deriv


@dataclass(frozen=True)
class AuditConfig:
    membership_grid: GridSpec = MEMBERSHIP_GRID
    norm_grid: GridSpec = NORM_GRID
    classes: tuple = ("starlike", "V")
    jobs: int = 1


def _audit_function(name: str, f: AnalyticFunction, alphas, cfg: AuditConfig):
    rows = []
    try:
        norm = norm_estimate(f, cfg.norm_grid, profile=False)
    except Exception as exc:  # noqa: BLE001 - recorded in the row
        norm, norm_err = None, f"{type(exc).__name__}: {exc}"
    else:
        norm_err = None
    for cls in cfg.classes:
        # membership is computed once per class and re-judged per alpha
        try:
            fwd0, inv0 = check_bi(f, 0.0, cls, cfg.membership_grid)
            err = norm_err
        except Exception as exc:  # noqa: BLE001
            fwd0 = inv0 = None
            err = f"{type(exc).__name__}: {exc}"
        for a in alphas:
            fwd = _rejudge(fwd0, a)
            inv = _rejudge(inv0, a)
            row = AuditRow(name, a, cls, fwd, inv, norm, BoundProfile.at(a), error=err)
            rows.append(row.recompute_flags())
    return rows


def _rejudge(rep: Optional[MembershipReport], alpha: float):
    if rep is None:
        return None
    return MembershipReport(rep.kind, rep.direction, alpha, rep.empirical_min_re, rep.witness,
                            rep.grid, rep.inverse_domain_radius, verdict_at(rep, alpha))


def audit(functions: Sequence, alphas: Sequence[float], cfg: AuditConfig = AuditConfig()):
    """Audit rows for every (function, alpha, class), ordered by (function, alpha, class).

    ``functions`` holds catalog names or ``(name, AnalyticFunction)`` pairs.
    Failures are recorded in the row's ``error`` field.
    """
    for a in alphas:
        _check_alpha(a)
    items = []
    for item in functions:
        if isinstance(item, str):
            items.append((item, make_named(item)))
        else:
            items.append(tuple(item))
    alphas = list(alphas)
    if cfg.jobs > 1:
        with ThreadPoolExecutor(cfg.jobs) as ex:
            chunks = list(ex.map(lambda it: _audit_function(it[0], it[1], alphas, cfg), items))
    else:
        chunks = [_audit_function(n, f, alphas, cfg) for n, f in items]
    rows = [r for chunk in chunks for r in chunk]
    order = {c: i for i, c in enumerate(cfg.classes)}
    rows.sort(key=lambda r: (r.function, r.alpha, order[r.cls]))
    return rows


def theorem_violations(rows) -> list:
    return [(r.function, r.alpha, r.cls, v) for r in rows for v in r.violations]


__all__ = [
    "AuditConfig", "AuditRow", "BOUND_NAMES", "BoundProfile", "VIOLATION_TOL", "audit",
    "bound_value", "derivation_case2", "derivation_phi", "majorant", "majorant_sup",
    "rahmatan_A", "rahmatan_B", "theorem1_stated", "theorem_violations", "yamashita",
]
