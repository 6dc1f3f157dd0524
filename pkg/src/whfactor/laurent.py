"""Laurent coefficients of ``1/p`` on the annulus by roots-of-unity averaging.

For an even sampling order ``ell`` the coefficient ``c_k`` of ``1/p`` is
approximated by

    c~_k = (1/ell) * sum_j 1 / (p(w_j) * w_j**k),   w_j = exp(2 pi i j / ell),

and for ``-ell/2 <= k <= ell/2`` the error is below
``2 M_K rho**(ell/2) / (1 - rho**ell)`` with ``M_K = max_K |1/p| = 1/m_K``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .contour import AnnulusParams
from .errors import EllTooSmall, EpsTooLarge, IndexOutOfWindow, ZeroOnCircle
from .poly import ZERO_THRESHOLD, Polynomial, evaluate, one_norm
from .precision import Precision


@dataclass(frozen=True)
class LaurentWindow:
    """Finite slice ``c_lo .. c_hi`` of a (Laurent) sequence.

    ``n``, ``kappa`` and ``ell`` are set for windows built from a polynomial;
    then ``lo = -n - kappa`` and ``hi = n - kappa``.  Hand-made windows used
    to exercise the Toeplitz machinery leave them as ``None``.
    """

    lo: int
    values: np.ndarray
    ctx: Precision = field(default_factory=Precision.native)
    per_entry_bound: float = 0.0
    ell: int | None = None
    n: int | None = None
    kappa: int | None = None

    def __post_init__(self):
        if len(self.values) == 0:
            raise ValueError("empty window")
        if self.n is not None and self.kappa is not None:
            if self.lo != -self.n - self.kappa or self.hi != self.n - self.kappa:
                raise ValueError("window bounds must be -n-kappa .. n-kappa")

    @classmethod
    def from_values(cls, lo: int, values, ctx: Precision | None = None, **kw) -> "LaurentWindow":
        ctx = ctx or Precision.native()
        return cls(lo, ctx.asarray(values), ctx, **kw)

    @property
    def hi(self) -> int:
        return self.lo + len(self.values) - 1

    def c(self, k: int):
        if not self.lo <= k <= self.hi:
            raise IndexOutOfWindow(f"c_{k} outside window [{self.lo}, {self.hi}]")
        return self.values[k - self.lo]

    def slice(self, lo: int, hi: int) -> "LaurentWindow":
        """Sub-window ``c_lo .. c_hi`` (same values, bookkeeping dropped)."""
        if not (self.lo <= lo <= hi <= self.hi):
            raise IndexOutOfWindow(f"[{lo}, {hi}] not inside [{self.lo}, {self.hi}]")
        return LaurentWindow(lo, self.values[lo - self.lo : hi - self.lo + 1], self.ctx,
                             self.per_entry_bound, self.ell)

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)


def truncation_bound(mK: float, rho: float, ell: int) -> float:
    """``2 (1/m_K) rho**(ell/2) / (1 - rho**ell)``."""
    return 2.0 / mK * rho ** (ell / 2) / (1.0 - rho**ell)


def _inverse_samples(p: Polynomial, ell: int) -> tuple[np.ndarray, np.ndarray]:
    ctx = p.ctx
    w = ctx.roots_of_unity(ell)
    pw = evaluate(p, w)
    floor = ZERO_THRESHOLD * one_norm(p)
    mags = np.array([ctx.abs(v) for v in pw]) if not ctx.is_native else np.abs(pw)
    if mags.min() < floor:
        j = int(np.argmin(mags))
        raise ZeroOnCircle(f"|p(w_{j})| = {mags[j]:.3e} for ell = {ell}")
    return w, ctx.one() / pw if not ctx.is_native else 1.0 / pw


def _sampled_coefficients(p: Polynomial, ks, ell: int) -> np.ndarray:
    w, f = _inverse_samples(p, ell)
    ks = np.asarray(list(ks), dtype=np.int64)
    idx = np.mod(-np.outer(ks, np.arange(ell, dtype=np.int64)), ell)
    return (w[idx] @ f) / p.ctx.scalar(ell)


def approx_coefficient(p: Polynomial, k: int, ell: int):
    """Approximate Laurent coefficient ``c~_k`` of ``1/p`` from ``ell`` samples."""
    if ell < 2 or ell % 2:
        raise ValueError("ell must be an even integer >= 2")
    return _sampled_coefficients(p, [k], ell)[0]


def build_window(p: Polynomial, n: int, kappa: int, ell: int, annulus: AnnulusParams) -> LaurentWindow:
    """Window ``c~_{-n-kappa} .. c~_{n-kappa}`` with its per-entry error bound.

    All ``ell`` evaluations of ``p`` are shared by the ``2n+1`` coefficients.
    """
    n0 = max(kappa, p.degree - kappa)
    if n < n0:
        raise ValueError(f"n = {n} is below n0 = {n0}")
    if ell < 2 or ell % 2:
        raise ValueError("ell must be an even integer >= 2")
    if ell < 2 * (n + kappa):
        raise EllTooSmall(f"ell = {ell} < 2(n + kappa) = {2 * (n + kappa)}")
    lo, hi = -n - kappa, n - kappa
    values = _sampled_coefficients(p, range(lo, hi + 1), ell)
    return LaurentWindow(lo, values, p.ctx, truncation_bound(annulus.mK, annulus.rho, ell),
                         ell, n, kappa)


def choose_ell(
    eps_tilde: float,
    *,
    n: int,
    kappa: int,
    rho: float,
    mK: float,
    delta0: float,
    norm_p: float,
    q: float = 0.5,
) -> int:
    """Smallest even sampling order that delivers accuracy ``eps_tilde`` in both factors.

    With ``P = delta0 * ||p||``::

        alpha = eps (1-q) m_K / P * min{(4n-2)(1 + P(1+rho)/(m_K(1-rho))), (4n+2) P}
        ell   > 2 max{n + kappa, log(sqrt(1 + 1/(4 alpha^2)) + 1/(2 alpha)) / |log rho|}
    """
    if not 0 < q < 1:
        raise ValueError("q must lie in (0, 1)")
    if eps_tilde >= q / (1 - q):
        raise EpsTooLarge(f"eps_tilde = {eps_tilde} must be below q/(1-q) = {q / (1 - q)}")
    if min(eps_tilde, rho, mK, delta0, norm_p) <= 0 or rho >= 1:
        raise ValueError("bound inputs must be positive and rho < 1")
    P = delta0 * norm_p
    alpha = eps_tilde * (1 - q) * mK / P * min(
        (4 * n - 2) * (1 + P * (1 + rho) / (mK * (1 - rho))),
        (4 * n + 2) * P,
    )
    # log(sqrt(1 + x^2) + x) with x = 1/(2 alpha)
    order = math.asinh(1 / (2 * alpha)) / abs(math.log(rho))
    lower = 2 * max(n + kappa, order)
    ell = math.floor(lower) + 1
    return ell + (ell % 2)
