"""Numerical toolkit for bi-starlike functions and their pre-Schwarzian norms.

Modules
-------
series      truncated complex power series (arithmetic, composition, reversion)
catalog     closed-form test functions (Koebe, generalized Koebe, f1, f2, f3)
schwarz     Schwarz functions and generators of class members
membership  grid tests of the starlike and V(alpha) conditions, with inverses
norms       pre-Schwarzian, Schwarzian and the pre-Schwarzian norm
audit       bound formulas and the norm-versus-bound audit
cli         command-line front end
"""

from .catalog import AnalyticFunction, make_named
from .errors import (
    ArgumentError,
    BistarError,
    DomainError,
    LocalUnivalenceError,
    NumericError,
    PoleError,
    UnsupportedOperationError,
)
from .series import TruncatedSeries

__version__ = "0.1.0"

__all__ = [
    "AnalyticFunction", "ArgumentError", "BistarError", "DomainError", "LocalUnivalenceError",
    "NumericError", "PoleError", "TruncatedSeries", "UnsupportedOperationError", "make_named",
]
