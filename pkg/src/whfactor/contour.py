"""Index of a polynomial with respect to the unit circle, and the annulus K.

The index (number of zeros inside the unit circle) is obtained from the
argument-increment integral

    kappa = 1/(2 pi) * int_0^{2 pi} (xi eta' - xi' eta) / (xi^2 + eta^2) dphi,

with ``p(e^{i phi}) = xi + i eta``, by composite Gauss-Legendre quadrature.
All of this runs in binary64: the result is rounded to an integer and the
annulus quantities only feed a-priori bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import IndexUncertain, NoAnnulus, ZeroOnCircle
from .poly import Polynomial, circle_extrema, one_norm

NODES_PER_PANEL = 16
MAX_PANELS = 1 << 15
AGREEMENT = 1e-3
ROUNDING_SLACK = 0.25
RHO_START = 0.999
RHO_STEP = 0.99
RHO_FLOOR = 0.01
MARGIN = 1e-3


@dataclass(frozen=True)
class AnnulusParams:
    """Root-free annulus ``r <= |z| <= R`` around the unit circle."""

    rho: float
    r: float
    R: float
    m1: float
    mK: float

    def __post_init__(self):
        if not (0 < self.r < 1 < self.R):
            raise ValueError(f"need 0 < r < 1 < R, got r={self.r}, R={self.R}")
        if not math.isclose(self.rho, max(self.r, 1 / self.R), rel_tol=1e-12):
            raise ValueError("rho must equal max(r, 1/R)")
        if not (self.m1 >= self.mK > 0):
            raise ValueError(f"need m1 >= mK > 0, got m1={self.m1}, mK={self.mK}")


def _index_integral(coeffs: np.ndarray, dcoeffs: np.ndarray, panels: int) -> float:
    x, w = np.polynomial.legendre.leggauss(NODES_PER_PANEL)
    h = 2 * math.pi / panels
    starts = h * np.arange(panels)
    phi = (starts[:, None] + 0.5 * h * (x[None, :] + 1)).ravel()
    weights = np.tile(0.5 * h * w, panels)
    z = np.exp(1j * phi)
    pv = np.polyval(coeffs[::-1], z)
    dpv = np.polyval(dcoeffs[::-1], z) * 1j * z
    xi, eta = pv.real, pv.imag
    dxi, deta = dpv.real, dpv.imag
    integrand = (xi * deta - dxi * eta) / (xi * xi + eta * eta)
    return float(np.dot(weights, integrand)) / (2 * math.pi)


def winding_number(p: Polynomial, quad_points: int = 8 * NODES_PER_PANEL) -> int:
    """Number of zeros of ``p`` inside the unit circle.

    ``quad_points`` is the initial total number of quadrature nodes; panels
    are doubled until two successive estimates agree to ``1e-3``.

    Raises
    ------
    ZeroOnCircle
        If ``p`` vanishes numerically on the unit circle.
    IndexUncertain
        If the quadrature does not settle, or settles more than 0.25 away
        from an integer (a root sits too close to the circle).
    """
    circle_extrema(p, 1.0, samples=max(1024, 4 * (p.degree + 1)))
    if p.degree == 0:
        return 0
    c = p.native_coeffs()
    dc = p.derivative().native_coeffs()
    panels = max(1, quad_points // NODES_PER_PANEL)
    prev = _index_integral(c, dc, panels)
    while True:
        panels *= 2
        if panels > MAX_PANELS:
            raise IndexUncertain(
                f"index quadrature did not converge with {MAX_PANELS * NODES_PER_PANEL} nodes "
                f"(last value {prev:.6f}); a root is very close to the unit circle"
            )
        cur = _index_integral(c, dc, panels)
        if abs(cur - prev) <= AGREEMENT:
            break
        prev = cur
    kappa = round(cur)
    if abs(cur - kappa) > ROUNDING_SLACK:
        raise IndexUncertain(
            f"index integral {cur:.6f} is not close to an integer; "
            "a root lies (numerically) on the unit circle"
        )
    return int(kappa)


def stability_margin(p: Polynomial, p_tilde: Polynomial) -> bool:
    """True iff ``||p - p_tilde|| < min_{|z|=1} |p|`` (the index carries over)."""
    try:
        m1, _ = circle_extrema(p, 1.0)
    except ZeroOnCircle:
        return False
    return one_norm(p - p_tilde) < m1


def _circle_ok(p: Polynomial, kappa: int, radius: float):
    """``min |p|`` on ``|z| = radius`` if that circle sees exactly ``kappa`` roots inside."""
    try:
        m, _ = circle_extrema(p, radius)
        inside = winding_number(p.scaled(radius))
    except (IndexUncertain, ZeroOnCircle):
        return None
    return m if inside == kappa else None


def choose_annulus(
    p: Polynomial,
    rho_hint: float | None = None,
    kappa: int | None = None,
    r: float | None = None,
    R: float | None = None,
) -> AnnulusParams:
    """Pick the annulus ``r <= |z| <= R`` and its ``m_K``.

    Explicit radii ``r``/``R`` take precedence; a bare ``rho_hint`` means the
    symmetric annulus ``rho <= |z| <= 1/rho``.  Given annuli are only checked
    to be root-free.  Otherwise ``rho`` shrinks geometrically from 0.999 by a
    factor 0.99 while ``min |p|`` on both boundary circles stays above
    ``1e-3 * m1`` and no root is crossed; the last admissible value wins.
    ``m_K`` is the smaller boundary minimum: ``1/p`` is analytic on K, so
    ``|p|`` attains its minimum over K on the boundary.
    """
    m1, _ = circle_extrema(p, 1.0)
    if kappa is None:
        kappa = winding_number(p)
    if r is not None or R is not None or rho_hint is not None:
        if rho_hint is not None and not 0 < rho_hint < 1:
            raise ValueError("rho must lie in (0, 1)")
        if r is None:
            r = rho_hint if rho_hint is not None else 1 / R
        R = R if R is not None else (1 / rho_hint if rho_hint is not None else 1 / r)
        if not 0 < r < 1 < R:
            raise ValueError(f"need 0 < r < 1 < R, got r={r}, R={R}")
        m_r, m_R = _circle_ok(p, kappa, r), _circle_ok(p, kappa, R)
        if m_r is None or m_R is None:
            raise NoAnnulus(f"annulus {r:g} <= |z| <= {R:g} touches or contains a root of p")
        return AnnulusParams(max(r, 1 / R), r, R, m1, min(m_r, m_R, m1))

    best = None
    rho = RHO_START
    floor = MARGIN * m1
    while rho >= RHO_FLOOR:
        m_r, m_R = _circle_ok(p, kappa, rho), _circle_ok(p, kappa, 1 / rho)
        if m_r is None or m_R is None or min(m_r, m_R) < floor:
            break
        best = (rho, min(m_r, m_R))
        rho *= RHO_STEP
    if best is None:
        raise NoAnnulus("no root-free annulus with rho <= 0.999; a root is numerically on the circle")
    rho, mK = best
    return AnnulusParams(rho, rho, 1 / rho, m1, min(mK, m1))
