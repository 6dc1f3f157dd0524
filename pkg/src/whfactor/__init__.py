"""Wiener-Hopf factorization of scalar polynomials via Toeplitz matrices.

A polynomial ``p`` without zeros on the unit circle is split as
``p = p1 * p2`` with ``p1`` monic, its zeros inside the circle, and ``p2``
holding the zeros outside.  Both factors come out of a single Toeplitz
computation on Laurent coefficients of ``1/p``, with a-priori error bounds.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .bounds import BoundLedger, BoundsConfig, compute_ledger, select_delta0
from .contour import AnnulusParams, choose_annulus, winding_number
from .errors import NumericalError, ValidationError, WHFactorError
from .factor import FactorizationResult, assemble, solve_direct, solve_kernel
from .laurent import LaurentWindow, build_window, choose_ell
from .poly import Polynomial
from .precision import Precision

__all__ = [
    "AnnulusParams",
    "BoundLedger",
    "BoundsConfig",
    "FactorizationResult",
    "LaurentWindow",
    "NumericalError",
    "Polynomial",
    "Precision",
    "ValidationError",
    "WHFactorError",
    "assemble",
    "build_window",
    "choose_annulus",
    "choose_ell",
    "compute_ledger",
    "select_delta0",
    "solve_direct",
    "solve_kernel",
    "winding_number",
]
