"""Toeplitz family of a finite sequence, its indices and essential polynomials.

For a window ``c_M .. c_N`` the matrix ``T_k`` (``M <= k <= N``) has
``N-k+1`` rows, ``k-M+1`` columns and entries ``T_k[i, j] = c_{k+i-j}``.
Kernel vectors are handled through their generating polynomials
``Q(z) = sum_j q_j z**j`` of formal degree ``k - M``.  The linear functional
``sigma`` acts by ``sigma{z**j} = c_{-j}``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegeneratePair, IndexOutOfWindow, NotInKernel, RankAmbiguous
from .laurent import LaurentWindow
from .poly import Polynomial

RANK_SAFETY = 100.0
GAP_RATIO = 1e3
DEGENERACY = 1e-3
CANCEL_ULPS = 8.0


@dataclass(frozen=True)
class ToeplitzView:
    window: LaurentWindow
    k: int

    @property
    def rows(self) -> int:
        return self.window.hi - self.k + 1

    @property
    def cols(self) -> int:
        return self.k - self.window.lo + 1

    def entry(self, i: int, j: int):
        return self.window.c(self.k + i - j)

    def matrix(self) -> np.ndarray:
        i = np.arange(self.rows)[:, None]
        j = np.arange(self.cols)[None, :]
        return self.window.values[self.k + i - j - self.window.lo]


@dataclass(frozen=True)
class EssentialPair:
    """Factorization essential polynomials of a window.

    ``Q1 = z**(n-kappa+1) p1`` (monic, ``Q1(0) = 0``) and ``Q2 = p2`` with
    ``sigma{z**kappa Q2} = 1``.  ``sigma0`` is the essentialness test number
    of the pair (``-1`` in theory) and ``sigma1`` the determinant used to
    normalise the kernel basis it came from.
    """

    mu1: int
    mu2: int
    Q1: Polynomial
    Q2: Polynomial
    sigma0: object
    sigma1: object


def toeplitz_view(window: LaurentWindow, k: int) -> ToeplitzView:
    if not window.lo <= k <= window.hi:
        raise IndexOutOfWindow(f"k = {k} outside [{window.lo}, {window.hi}]")
    return ToeplitzView(window, k)


def sigma(window: LaurentWindow, Q: Polynomial, power: int = 0):
    """``sigma{z**power * Q(z)} = sum_j Q_j c_{-j-power}``."""
    acc = window.ctx.scalar(0)
    for j, q in enumerate(Q.coeffs):
        if q != 0:
            acc = acc + q * window.c(-j - power)
    return acc


def _sigma_combination(window: LaurentWindow, terms) -> object:
    """``sigma`` of ``sum a * z**power * Q`` over ``terms = [(a, power, Q), ...]``.

    Like powers are collected first, so coefficients that cancel exactly
    never touch entries outside the window.
    """
    ctx = window.ctx
    acc: dict[int, object] = {}
    size: dict[int, float] = {}
    for a, power, Q in terms:
        for j, q in enumerate(Q.coeffs):
            e = j + power
            acc[e] = acc.get(e, ctx.scalar(0)) + a * q
            size[e] = size.get(e, 0.0) + ctx.abs(a) * ctx.abs(q)
    out = ctx.scalar(0)
    for e, v in acc.items():
        if v == 0:
            continue
        if not window.lo <= -e <= window.hi and ctx.abs(v) <= CANCEL_ULPS * ctx.eps * size[e]:
            continue  # cancels in exact arithmetic
        out = out + v * window.c(-e)
    return out


def _rank_threshold(ctx, shape) -> float:
    return ctx.eps * max(shape) * RANK_SAFETY


def numerical_rank(A: np.ndarray, ctx, check_gap: bool = True) -> int:
    """Rank by singular-value thresholding (exact elimination for rationals)."""
    if ctx.is_exact:
        return ctx.exact_null_space(A)[0]
    s, _ = ctx.svd(A)
    return _rank_from_singular_values(s, _rank_threshold(ctx, A.shape), check_gap)


def _rank_from_singular_values(s: np.ndarray, tau: float, check_gap: bool) -> int:
    if s.size == 0 or s[0] == 0:
        return 0
    rank = int(np.sum(s > tau * s[0]))
    if check_gap and 0 < rank < s.size:
        gap = s[rank - 1] / s[rank] if s[rank] > 0 else np.inf
        if gap < GAP_RATIO:
            raise RankAmbiguous(
                f"singular values {s[rank - 1]:.3e} / {s[rank]:.3e} straddle the rank "
                f"threshold with gap {gap:.1f} < {GAP_RATIO:g}; raise precision or ell"
            )
    return rank


def essential_indices(window: LaurentWindow) -> tuple[int, int]:
    """Indices ``(mu1, mu2)`` from the rank of the middle Toeplitz matrix."""
    if window.is_zero():
        raise ValueError("indices are undefined for the zero sequence")
    M, N = window.lo, window.hi
    pi = numerical_rank(toeplitz_view(window, (N + M) // 2).matrix(), window.ctx)
    return M + pi - 1, N - pi + 1


def kernel_basis(view: ToeplitzView) -> list[Polynomial]:
    """Basis of the (numerical) kernel of ``T_k`` as generating polynomials.

    Floating backends return the right singular vectors whose singular value
    is below ``eps * max(rows, cols) * 100 * s_max`` (orthonormal basis);
    the exact backend returns a row-reduction basis.
    """
    ctx = view.window.ctx
    A = view.matrix()
    if ctx.is_exact:
        _, vecs = ctx.exact_null_space(A)
        return [Polynomial(v, ctx) for v in vecs]
    s, vh = ctx.svd(A)
    rank = _rank_from_singular_values(s, _rank_threshold(ctx, A.shape), check_gap=False)
    return [Polynomial(np.conj(vh[i]), ctx) for i in range(rank, view.cols)]


def _kernel_residual(window: LaurentWindow, Q: Polynomial, k: int) -> float:
    """Relative residual of ``Q`` as an element of ``N_k`` (0 when ``k = N+1``)."""
    formal = k - window.lo
    if Q.degree > formal:
        return np.inf
    if k > window.hi:
        return 0.0
    A = toeplitz_view(window, k).matrix()
    q = Q.padded(formal + 1)
    r = A @ q
    ctx = window.ctx
    num = sum(ctx.abs(v) for v in r)
    den = max(ctx.abs(v) for v in window.values) * sum(ctx.abs(v) for v in q) or 1.0
    return num / den


def _membership_tol(ctx) -> float:
    return 0.0 if ctx.is_exact else ctx.eps ** 0.5


def essentialness_test(window: LaurentWindow, Q1: Polynomial, Q2: Polynomial, mu1: int, mu2: int):
    """Test number ``sigma0``; it is nonzero iff ``Q1, Q2`` are essential for ``mu1, mu2``."""
    M, N = window.lo, window.hi
    if mu1 + mu2 != M + N:
        raise ValueError("indices must satisfy mu1 + mu2 = M + N")
    tol = _membership_tol(window.ctx)
    for Q, mu in ((Q1, mu1), (Q2, mu2)):
        res = _kernel_residual(window, Q, mu + 1)
        if res > tol:
            raise NotInKernel(f"polynomial is not in N_{mu + 1}: relative residual {res:.3e}")
    return _sigma_combination(window, [(Q2.coeff(mu2 - M + 1), -mu1, Q1),
                                       (-Q1.coeff(mu1 - M + 1), -mu2, Q2)])


def _norm2(ctx, Q: Polynomial) -> float:
    return float(np.sqrt(sum(ctx.abs(c) ** 2 for c in Q.coeffs)))


def normalize_to_factorization_pair(
    window: LaurentWindow, R1: Polynomial, R2: Polynomial, kappa: int
) -> EssentialPair:
    """Turn any essential basis ``R1, R2`` of ``N_{-kappa+1}`` into ``Q1, Q2``.

    ``sigma1 = R1(0) R2[n+1] - R2(0) R1[n+1]``,
    ``Q1 = -(R2(0) R1 - R1(0) R2) / sigma1``,
    ``Q2 = (R2[n+1] R1 - R1[n+1] R2) / sigma{z**kappa (R2[n+1] R1 - R1[n+1] R2)}``.
    """
    ctx = window.ctx
    n = -window.lo - kappa
    if window.hi != n - kappa:
        raise ValueError("window is not of the form c_{-n-kappa} .. c_{n-kappa}")
    top = n + 1
    r10, r20 = R1.coeff(0), R2.coeff(0)
    r1t, r2t = R1.coeff(top), R2.coeff(top)
    scale = _norm2(ctx, R1) * _norm2(ctx, R2)

    sigma1 = r10 * r2t - r20 * r1t
    if ctx.abs(sigma1) <= DEGENERACY * scale:
        raise DegeneratePair(f"|sigma1| = {ctx.abs(sigma1):.3e} too small; need n >= n0 + 1")
    Q1 = (R1 * r20 - R2 * r10) * (-ctx.one() / sigma1)

    combo = (R1 * r2t - R2 * r1t).padded(top + 1)
    combo[top] = ctx.scalar(0)  # cancels in exact arithmetic
    combo = Polynomial(combo, ctx)
    s0 = sigma(window, combo, kappa)
    cmax = max(ctx.abs(v) for v in window.values)
    if ctx.abs(s0) <= DEGENERACY * scale * cmax:
        raise DegeneratePair(f"|sigma0| = {ctx.abs(s0):.3e} too small; window may be corrupted")
    Q2 = combo * (ctx.one() / s0)

    # structural values, exact by construction
    q1 = Q1.padded(top + 1)
    q1[0] = ctx.scalar(0)
    q1[top] = ctx.one()
    Q1 = Polynomial(q1, ctx)
    q2 = Q2.padded(top + 1)
    q2[top] = ctx.scalar(0)
    Q2 = Polynomial(q2, ctx)

    test = _sigma_combination(window, [(Q2.coeff(top), kappa, Q1), (-Q1.coeff(top), kappa, Q2)])
    return EssentialPair(-kappa, -kappa, Q1, Q2, test, sigma1)
