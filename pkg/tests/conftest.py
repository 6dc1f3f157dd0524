from __future__ import annotations

from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from whfactor import catalog
from whfactor.contour import choose_annulus
from whfactor.laurent import LaurentWindow
from whfactor.poly import Polynomial
from whfactor.precision import Precision

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


def toy_coefficient(k: int) -> F:
    """Laurent coefficient of 1/((z - 1/2)(z - 2)) on 1/2 < |z| < 2."""
    return -F(1, 3) * F(1, 2) ** k if k >= 0 else -F(4, 3) * F(2) ** k


def toy_window(n: int, kappa: int = 1) -> LaurentWindow:
    ctx = Precision.exact()
    lo, hi = -n - kappa, n - kappa
    return LaurentWindow.from_values(lo, [toy_coefficient(k) for k in range(lo, hi + 1)], ctx,
                                     n=n, kappa=kappa)


def rank_fraction(rows: list[list[F]]) -> int:
    """Rank by plain Gaussian elimination over the rationals (independent of the package)."""
    M = [list(r) for r in rows]
    if not M:
        return 0
    rank, cols = 0, len(M[0])
    for c in range(cols):
        piv = next((i for i in range(rank, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for i in range(rank + 1, len(M)):
            f = M[i][c] / M[rank][c]
            if f:
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


@pytest.fixture
def exact():
    return Precision.exact()


@pytest.fixture
def native():
    return Precision.native()


@pytest.fixture
def toy_poly():
    return Polynomial([1, -2.5, 1])


@pytest.fixture(scope="session")
def example_annuli():
    out = {}
    for name, e in catalog.CATALOG.items():
        p = catalog.polynomial(e).monic()
        out[name] = choose_annulus(p, e.rho, e.kappa, e.r, e.R)
    return out


def exact_factors(entry):
    p1 = np.array([float(c) for c in catalog.expand_roots(entry.exact_p1_roots)])
    p2 = np.array([float(c) for c in catalog.expand_roots(entry.exact_p2_roots)])
    return p1, p2


def sample_roots(rng: np.random.Generator, nu: int, kappa: int) -> list[complex]:
    """``kappa`` roots with modulus in [0.2, 0.8] and ``nu - kappa`` in [1.25, 5]."""
    mods = np.concatenate([rng.uniform(0.2, 0.8, kappa), rng.uniform(1.25, 5.0, nu - kappa)])
    args = rng.uniform(0, 2 * np.pi, nu)
    return list(mods * np.exp(1j * args))


def from_roots(roots) -> Polynomial:
    c = np.array([1.0 + 0j])
    for r in roots:
        c = np.concatenate([[0], c]) - r * np.concatenate([c, [0]])
    return Polynomial(c)


def random_case(rng: np.random.Generator):
    """A factorable binary64 polynomial with 0 < kappa < nu and its exact-root factors."""
    nu = int(rng.integers(2, 13))
    kappa = int(rng.integers(1, nu))
    roots = sample_roots(rng, nu, kappa)
    return from_roots(roots), kappa, from_roots(roots[:kappa]), from_roots(roots[kappa:])


def run_case(p: Polynomial, kappa: int, eps_tilde: float = 1e-15):
    """Window, ledger and both-path results for a monic binary64 ``p``."""
    import warnings

    from whfactor.bounds import BoundsConfig, compute_ledger, rounding_floor
    from whfactor.errors import CertificationWarning
    from whfactor.factor import factorize_window, solve_kernel
    from whfactor.laurent import build_window

    n = p.degree + 1
    ann = choose_annulus(p, None, kappa)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", CertificationWarning)
        led = compute_ledger(p, kappa, ann, n, BoundsConfig(1e-15, eps_tilde_override=eps_tilde))
    floor = rounding_floor(unit_roundoff=p.ctx.eps, cond_bound=led.cond_bound,
                           delta0=led.delta0, norm_p=led.norm_p)
    tol = max(led.eps, floor)
    w = build_window(p, n, kappa, led.ell, ann)
    pair = solve_kernel(w, kappa, n)
    res = {path: factorize_window(w, p, kappa, n, tol, path) for path in ("kernel", "direct")}
    return w, led, tol, pair, res
