"""Root-based reference computations, used for testing and cross-checks.

The naive factorizer splits the roots of ``p`` at the unit circle and
multiplies the linear factors back together.  It is an independent check
on the Toeplitz pipeline, not a replacement for it: the roots are
ill-conditioned functions of the coefficients.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import EigFailure, RepeatedRoot, RootOnCircle
from .poly import Polynomial
from .precision import Precision

CIRCLE_GAP = 1e-6
NEWTON_STEPS = 3


def _companion(c: np.ndarray) -> np.ndarray:
    """Companion matrix of the monic polynomial with ascending coefficients ``c``."""
    nu = len(c) - 1
    C = np.zeros((nu, nu), dtype=c.dtype)
    if C.dtype == object:
        C.fill(c[0] * 0)
    for i in range(1, nu):
        C[i, i - 1] = c[-1] / c[-1]
    C[:, -1] = -c[:-1] / c[-1]
    return C


def companion_roots(p: Polynomial) -> list:
    """Roots of ``p`` as eigenvalues of its companion matrix.

    Extended backends polish each eigenvalue by a few Newton steps in the
    working precision.
    """
    if p.degree < 1:
        return []
    ctx = p.ctx
    if ctx.is_exact:
        p = p.to(Precision.native())
        ctx = p.ctx
    C = _companion(p.coeffs)
    if ctx.is_native:
        try:
            return list(np.linalg.eigvals(C))
        except np.linalg.LinAlgError as exc:
            raise EigFailure(str(exc)) from exc
    mp = ctx.mp
    try:
        ev, _ = mp.eig(mp.matrix(C.tolist()))
    except Exception as exc:  # mpmath raises bare exceptions on non-convergence
        raise EigFailure(f"eigenvalue iteration failed: {exc}") from exc
    dp = p.derivative()
    roots = []
    for z in ev:
        z = mp.mpc(z)
        for _ in range(NEWTON_STEPS):
            d = dp(z)
            if d == 0:
                break
            z = z - p(z) / d
        roots.append(z)
    return roots


def _tree_product(factors: list[Polynomial], ctx) -> Polynomial:
    if not factors:
        return Polynomial([1], ctx)
    while len(factors) > 1:
        nxt = [factors[i] * factors[i + 1] for i in range(0, len(factors) - 1, 2)]
        if len(factors) % 2:
            nxt.append(factors[-1])
        factors = nxt
    return factors[0]


def naive_factorize(p: Polynomial) -> tuple[Polynomial, Polynomial]:
    """``(p1, p2)`` from the roots: ``p1`` monic over ``|xi| < 1``, ``p2`` carries ``p_nu``."""
    ctx = p.ctx
    roots = companion_roots(p)
    inner, outer = [], []
    for z in roots:
        m = ctx.abs(z)
        if abs(m - 1) <= CIRCLE_GAP:
            raise RootOnCircle(f"root of modulus {m:.9f} is within {CIRCLE_GAP:g} of the circle")
        (inner if m < 1 else outer).append(Polynomial([-z, 1], ctx))
    p1 = _tree_product(inner, ctx)
    p2 = _tree_product(outer, ctx) * p.leading
    return p1, p2


def exact_laurent(p_roots, k: int, lead=1):
    """Coefficient of ``z**k`` of ``1 / (lead * prod (z - xi))`` on the annulus around the circle.

    With ``A_i = 1 / p'(xi_i)``, roots inside contribute ``A_i xi_i**(-k-1)``
    for ``k <= -1`` and roots outside contribute ``-A_i xi_i**(-k-1)`` for
    ``k >= 0``.  Works with Fractions, complex numbers or mpmath scalars.
    """
    roots = list(p_roots)
    for i, a in enumerate(roots):
        if abs(a) == 1:
            raise RootOnCircle(f"root {a} lies on the unit circle")
        for b in roots[i + 1 :]:
            if a == b or (not isinstance(a, Fraction) and abs(a - b) <= 1e-12 * max(abs(a), 1)):
                raise RepeatedRoot(f"repeated root {a}")
    total = 0
    for i, xi in enumerate(roots):
        deriv = lead
        for j, other in enumerate(roots):
            if j != i:
                deriv = deriv * (xi - other)
        inside = abs(xi) < 1
        if inside and k <= -1:
            total = total + xi ** (-k - 1) / deriv
        elif not inside and k >= 0:
            total = total - xi ** (-k - 1) / deriv
    return total
