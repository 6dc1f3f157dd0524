"""Factorization engine: the two solution paths, trimming and assembly.

Both paths start from a window ``c_{-n-kappa} .. c_{n-kappa}`` of ``1/p``
for the *monic* polynomial ``p / p_nu``.

* ``direct``: solve the square Toeplitz systems

      T_{-kappa}(c_{-n-kappa+1} .. c_{n-kappa-1}) alpha = -(c_{-n-kappa}, .., c_{-kappa-1})
      T_{-kappa}(c_{-n-kappa} .. c_{n-kappa}) beta = e_1

  so that ``p1 = z**kappa + alpha_n z**(kappa-1) + ... + alpha_{n-kappa+1}``
  and ``p2 = beta_0 + ... + beta_{nu-kappa} z**(nu-kappa)``.
* ``kernel``: take a basis of ``ker T_{-kappa+1}`` and normalise it to the
  pair ``Q1 = z**(n-kappa+1) p1``, ``Q2 = p2``.

Coefficients that vanish in exact arithmetic are checked against the
certified accuracy and then dropped.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bounds import is_self_inversive
from .errors import NotSelfInversive, RankAmbiguous, TrimViolation
from .laurent import LaurentWindow
from .poly import Polynomial, one_norm
from .toeplitz import EssentialPair, kernel_basis, normalize_to_factorization_pair, toeplitz_view

PATHS = ("kernel", "direct")


@dataclass(frozen=True)
class FactorizationResult:
    """``p = p1 * p2`` with ``p1`` monic of degree ``kappa``, roots inside the circle.

    ``p_minus = p1 / z**kappa`` is represented by ``p1`` and the shift
    ``kappa``; ``p_plus`` is ``p2``.  ``alpha_raw``/``beta_raw`` hold the
    untrimmed solution vectors (``Q1``/``Q2`` coefficients on the kernel path).
    """

    kappa: int
    n: int
    p: Polynomial
    p1: Polynomial
    p2: Polynomial
    residual: float
    path: str
    alpha_raw: np.ndarray | None = None
    beta_raw: np.ndarray | None = None
    trimmed_max: float = 0.0
    trivial: bool = False

    @property
    def p_minus(self) -> tuple[Polynomial, int]:
        return self.p1, self.kappa

    @property
    def p_plus(self) -> Polynomial:
        return self.p2


def _check_window(window: LaurentWindow, kappa: int, n: int) -> None:
    if window.lo != -n - kappa or window.hi != n - kappa:
        raise ValueError(f"window [{window.lo}, {window.hi}] does not match n={n}, kappa={kappa}")


def solve_direct(window: LaurentWindow, kappa: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Solve the alpha and beta systems; returns ``(alpha, beta)`` of lengths ``n``, ``n+1``.

    ``alpha[i]`` stores ``alpha_{i+1}``; ``beta[i]`` stores ``beta_i``.
    """
    _check_window(window, kappa, n)
    ctx = window.ctx
    inner = window.slice(window.lo + 1, window.hi - 1)
    A = toeplitz_view(inner, -kappa).matrix()
    rhs = -np.array([window.c(k) for k in range(-n - kappa, -kappa)], dtype=A.dtype)
    alpha = ctx.solve(A, rhs)
    B = toeplitz_view(window, -kappa).matrix()
    e1 = ctx.zeros(n + 1)
    e1[0] = ctx.one()
    beta = ctx.solve(B, e1)
    return alpha, beta


def solve_kernel(window: LaurentWindow, kappa: int, n: int) -> EssentialPair:
    """Kernel basis of ``T_{-kappa+1}`` normalised to the factorization pair."""
    _check_window(window, kappa, n)
    basis = kernel_basis(toeplitz_view(window, -kappa + 1))
    if len(basis) != 2:
        raise RankAmbiguous(
            f"kernel of T_(-kappa+1) has dimension {len(basis)}, expected 2; "
            "raise ell or the working precision"
        )
    return normalize_to_factorization_pair(window, basis[0], basis[1], kappa)


def _finish(p: Polynomial, p1c, p2c, kappa, n, path, raw1, raw2, trimmed) -> FactorizationResult:
    ctx = p.ctx
    p1 = Polynomial(p1c, ctx)
    p2 = Polynomial(p2c, ctx) * p.leading
    residual = one_norm(p1 * p2 - p)
    return FactorizationResult(kappa, n, p, p1, p2, residual, path, raw1, raw2, trimmed)


def assemble(pair_or_vectors, p: Polynomial, kappa: int, n: int, eps: float) -> FactorizationResult:
    """Trim structural zeros and form ``p1``, ``p2``.

    ``pair_or_vectors`` is an :class:`EssentialPair` or ``(alpha, beta)``
    from :func:`solve_direct`.  The window must come from ``p / p_nu``; the
    leading coefficient of ``p`` is restored into ``p2``.

    Raises
    ------
    TrimViolation
        If a coefficient that is zero in exact arithmetic exceeds ``eps``.
    """
    ctx = p.ctx
    nu = p.degree
    if isinstance(pair_or_vectors, EssentialPair):
        q1 = pair_or_vectors.Q1.padded(n + 2)
        q2 = pair_or_vectors.Q2.padded(n + 2)
        dropped = list(q1[: n - kappa + 1]) + list(q2[nu - kappa + 1 :])
        p1c = q1[n - kappa + 1 :]
        p2c = q2[: nu - kappa + 1]
        path, raw1, raw2 = "kernel", q1, q2
    else:
        alpha, beta = pair_or_vectors
        dropped = list(alpha[: n - kappa]) + list(beta[nu - kappa + 1 :])
        p1c = np.concatenate([alpha[n - kappa :], [ctx.one()]])
        p2c = beta[: nu - kappa + 1]
        path, raw1, raw2 = "direct", alpha, beta
    trimmed = max((ctx.abs(v) for v in dropped), default=0.0)
    if trimmed >= eps:
        raise TrimViolation(
            f"structural zero of magnitude {trimmed:.3e} exceeds eps = {eps:.3e}; "
            "raise ell or the working precision"
        )
    return _finish(p, ctx.asarray(p1c), ctx.asarray(p2c), kappa, n, path, raw1, raw2, trimmed)


def trivial_factorization(p: Polynomial, kappa: int) -> FactorizationResult:
    """``kappa = 0``: ``p1 = 1``; ``kappa = nu``: ``p2 = p_nu``."""
    ctx = p.ctx
    if kappa == 0:
        p1, p2 = Polynomial([1], ctx), p
    elif kappa == p.degree:
        p1, p2 = p.monic(), Polynomial([p.leading], ctx)
    else:
        raise ValueError("factorization is trivial only for kappa = 0 or kappa = nu")
    return FactorizationResult(kappa, 0, p, p1, p2, one_norm(p1 * p2 - p), "trivial", trivial=True)


def factorize_window(window: LaurentWindow, p: Polynomial, kappa: int, n: int, eps: float,
                     path: str = "kernel") -> FactorizationResult:
    if path == "kernel":
        return assemble(solve_kernel(window, kappa, n), p, kappa, n, eps)
    if path == "direct":
        return assemble(solve_direct(window, kappa, n), p, kappa, n, eps)
    raise ValueError(f"unknown path {path!r}")


def _head(p: Polynomial, k: int) -> Polynomial:
    """``p^(k)``: the top ``k+1`` coefficients of ``p`` moved down to degree ``k``."""
    return Polynomial(p.coeffs[p.degree - k :], p.ctx)


def _tail(p: Polynomial, k: int) -> Polynomial:
    """``p_(k)``: the bottom ``k+1`` coefficients of ``p``."""
    return Polynomial(p.coeffs[: k + 1], p.ctx)


def inverse_columns(p1: Polynomial, p2: Polynomial, n: int) -> list[Polynomial]:
    """Generating polynomials ``B_0 .. B_n`` of the columns of ``T_{-kappa}^{-1}``.

    ``p1`` must be monic; ``kappa = deg p1`` and ``nu = deg p1 + deg p2``.
    """
    kappa = p1.degree
    nu = kappa + p2.degree
    if n < nu:
        raise ValueError("need n >= nu")
    p = p1 * p2
    cols = []
    for j in range(n + 1):
        if j <= kappa:
            cols.append(_head(p1, j) * p2)
        elif j <= n - nu + kappa:
            cols.append(p.shift(j - kappa))
        else:
            cols.append((p1 * _tail(p2, n - j)).shift(j - kappa))
    return cols


def inverse_norm(p1: Polynomial, p2: Polynomial, n: int) -> float:
    """``||T_{-kappa}^{-1}||_1 = max_j ||B_j||``."""
    return max(one_norm(b) for b in inverse_columns(p1, p2, n))


def spectral_symmetry_check(result: FactorizationResult) -> float:
    """``||p2/p_nu - z**kappa conj(p1(1/conj z)) / conj(p1(0))||``.

    For real ``p`` this is ``||p2 - z**kappa p1(1/z) / p1(0)||`` (``p`` monic).
    """
    if not is_self_inversive(result.p):
        raise NotSelfInversive("p fails the coefficient symmetry test at 1e-12 * ||p||")
    p1 = result.p1
    mirror = p1.reflected() / np.conj(p1.coeff(0))
    return one_norm(result.p2 / result.p.leading - mirror)
