"""A-priori error bounds for the factorization.

All quantities are plain floats: they are bound constants, not data, and
binary64 carries them far more accurately than they are ever needed.
Notation follows the rest of the package: ``norm_p = ||p||`` (1-norm of the
monic-normalised polynomial), ``m1 = min_{|z|=1} |p|``, ``mK = min_K |p|``,
``rho = max(r, 1/R)``, and ``delta0`` the constant in
``||p1|| ||p2|| <= delta0 ||p||``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .contour import AnnulusParams
from .errors import CertificationWarning, HypothesisViolated, SymmetryViolation
from .laurent import choose_ell, truncation_bound
from .poly import Polynomial, one_norm

CATALAN = 0.915965594177219015054603514932
BOYD_DELTA = math.exp(2 * CATALAN / math.pi)
SYMMETRY_TOL = 1e-12

DELTA0_MODES = ("auto", "general", "self-inversive", "one")


@dataclass(frozen=True)
class BoundsConfig:
    """User-facing knobs of the bound ledger.

    ``delta0_mode`` is one of ``auto``, ``general``, ``self-inversive``,
    ``one`` or a positive number given as a string/float.
    """

    delta: float
    q: float = 0.5
    delta0_mode: str | float = "auto"
    eps_tilde_override: float | None = None

    def __post_init__(self):
        if not 0 < self.q < 1:
            raise ValueError("q must lie in (0, 1)")
        if not self.delta > 0:
            raise ValueError("delta must be positive")


@dataclass(frozen=True)
class BoundLedger:
    delta0: float
    delta0_mode: str
    boyd_delta: float
    norm_p: float
    m1: float
    mK: float
    rho: float
    n: int
    q: float
    delta: float
    toeplitz_norm_annulus: float
    toeplitz_norm_rough: float
    cond_bound_annulus: float
    cond_bound_rough: float
    eps1: float
    eps2: float
    eps: float
    eps_pow10: float
    d: int
    d_tilde: int
    eps_tilde: float
    eps_tilde_source: str
    ell: int
    window_entry_bound: float
    window_bound_p1: float
    window_bound_p2: float
    window_hypothesis_holds: bool
    certified: bool

    @property
    def cond_bound(self) -> float:
        return min(self.cond_bound_annulus, self.cond_bound_rough)

    def as_dict(self) -> dict:
        out = asdict(self)
        out["cond_bound"] = self.cond_bound
        return out


class AccuracyBounds(NamedTuple):
    eps1: float
    eps2: float
    eps: float
    eps_pow10: float
    d: int
    certified: bool


# -- delta0 ------------------------------------------------------------------

def _symmetry_residual(c: np.ndarray) -> float:
    """``min_lambda ||c[::-1] - lambda conj(c)||`` for unimodular ``lambda = c[-1]/conj(c[0])``."""
    if c[0] == 0:
        return np.inf
    lam = c[-1] / np.conj(c[0])
    if abs(abs(lam) - 1) > SYMMETRY_TOL:
        return np.inf
    return float(np.sum(np.abs(c[::-1] - lam * np.conj(c))))


def is_self_inversive(p: Polynomial, tol: float = SYMMETRY_TOL) -> bool:
    """Coefficients satisfy ``p_{nu-j} = lambda conj(p_j)`` with ``|lambda| = 1``."""
    c = p.native_coeffs() / p.native_coeffs()[-1]
    return _symmetry_residual(c) <= tol * float(np.sum(np.abs(c)))


def is_real_palindromic(p: Polynomial, tol: float = SYMMETRY_TOL) -> bool:
    c = p.native_coeffs() / p.native_coeffs()[-1]
    scale = float(np.sum(np.abs(c)))
    return (float(np.sum(np.abs(c.imag))) <= tol * scale
            and float(np.sum(np.abs(c[::-1] - c))) <= tol * scale)


def general_delta0(nu: int, kappa: int) -> float:
    return BOYD_DELTA**nu * math.sqrt((kappa + 1) * (nu - kappa + 1))


def resolve_delta0(
    p: Polynomial, kappa: int, mode: str | float = "auto", roots: Sequence[complex] | None = None
) -> tuple[str, float]:
    """Resolve ``mode`` to ``(mode_used, delta0)``.

    ``auto`` tries ``one`` (only when ``roots`` are supplied to verify the
    negative-real-part hypothesis), then ``self-inversive``, then ``general``.
    """
    nu = p.degree
    if not isinstance(mode, str) or mode not in DELTA0_MODES:
        value = float(mode)
        if value < 1:
            raise ValueError("delta0 is at least 1")
        return "manual", value

    def one_ok() -> bool:
        if nu % 2 or not is_real_palindromic(p):
            return False
        return roots is None or all(complex(r).real < 0 for r in roots)

    def si_ok() -> bool:
        return nu % 2 == 0 and kappa == nu // 2 and is_self_inversive(p)

    if mode == "general":
        return mode, general_delta0(nu, kappa)
    if mode == "one":
        if not one_ok():
            raise SymmetryViolation("delta0 = 1 needs a real palindromic p with roots in Re z < 0")
        return mode, 1.0
    if mode == "self-inversive":
        if not si_ok():
            raise SymmetryViolation("p is not self-inversive of even degree 2m with index m")
        return mode, float(nu // 2 + 1)
    if roots is not None and one_ok():
        return "one", 1.0
    if si_ok():
        return "self-inversive", float(nu // 2 + 1)
    return "general", general_delta0(nu, kappa)


def select_delta0(p: Polynomial, kappa: int, mode: str | float = "auto", roots=None) -> float:
    return resolve_delta0(p, kappa, mode, roots)[1]


# -- norm, condition and accuracy bounds ------------------------------------------

def toeplitz_norm_bounds(*, mK: float, m1: float, rho: float, n: int) -> tuple[float, float]:
    """Upper bounds ``(1/mK)(1+rho)/(1-rho)`` and ``(2n+1)/m1`` for ``||T_{-kappa}||``."""
    return (1 + rho) / ((1 - rho) * mK), (2 * n + 1) / m1


def condition_bounds(
    *, delta0: float, norm_p: float, mK: float, m1: float, rho: float, n: int
) -> tuple[float, float]:
    """Bounds on ``k(T_{-kappa})`` via ``||T^{-1}|| <= delta0 ||p||``."""
    t_ann, t_rough = toeplitz_norm_bounds(mK=mK, m1=m1, rho=rho, n=n)
    return t_ann * delta0 * norm_p, t_rough * delta0 * norm_p


def accuracy_bounds(
    *,
    n: int,
    delta0: float,
    norm_p: float,
    m1: float,
    mK: float,
    rho: float,
    Delta: float,
    q: float = 0.5,
) -> AccuracyBounds:
    """Guaranteed accuracy of ``p1, p2`` for input data known to within ``Delta``.

    If ``Delta`` exceeds ``min{q m1, q(1-q) m1^2 / ((2n+1) delta0 ||p||)}`` the
    numbers are still returned, with ``certified=False`` and a
    :class:`CertificationWarning`.
    """
    P = delta0 * norm_p
    limit = min(q * m1, q * (1 - q) * m1**2 / ((2 * n + 1) * P))
    certified = Delta <= limit
    if not certified:
        warnings.warn(
            f"Delta = {Delta:g} exceeds {limit:.3e}; accuracy bounds are not certified",
            CertificationWarning,
            stacklevel=2,
        )
    pre = (2 * n + 1) * P / ((1 - q) ** 2 * m1**2)
    eps1 = pre * (P / mK * (1 + rho) / (1 - rho) + 1) * Delta
    eps2 = pre * P * Delta
    eps = max(eps1, eps2)
    d = math.floor(-math.log10(eps)) + 1
    return AccuracyBounds(eps1, eps2, eps, 10.0**-d, d, certified)


def window_perturbation_bounds(
    *, n: int, delta0: float, norm_p: float, mK: float, rho: float, ell: int, q: float = 0.5,
    kappa: int | None = None,
) -> tuple[float, float, bool]:
    """Factor errors caused by sampling the window with order ``ell``.

    Returns ``(bound_p1, bound_p2, hypothesis_holds)`` where the hypothesis is
    ``rho**(ell/2)/(1-rho**ell) < q mK / ((4n+2) delta0 ||p||)``.
    """
    if ell % 2:
        raise ValueError("ell must be even")
    if kappa is not None and ell < 2 * (n + kappa):
        raise ValueError("ell must be at least 2(n + kappa)")
    P = delta0 * norm_p
    t = rho ** (ell / 2) / (1 - rho**ell)
    b1 = (4 * n - 2) * P / ((1 - q) * mK) * (P * (1 + rho) / ((1 - q) * (1 - rho) * mK) + 1) * t
    b2 = (4 * n + 2) * P**2 / ((1 - q) * mK) * t
    return b1, b2, t < q * mK / ((4 * n + 2) * P)


def rounding_floor(*, unit_roundoff: float, cond_bound: float, delta0: float, norm_p: float) -> float:
    """Accuracy a backend with the given unit roundoff can deliver: ``u k(T) delta0 ||p||``.

    The certified ``eps`` assumes exact window data; when this floor is above
    it, the floor is the honest scale for the computed factors.
    """
    return unit_roundoff * cond_bound * delta0 * norm_p


def linear_system_error(A_norm_inv: float, A_delta: float, b_norm: float, b_delta: float,
                        q: float = 0.5) -> float:
    """``||x - x~|| <= ||A^-1||/(1-q) [||A^-1|| ||A - A~|| ||b|| + ||b - b~||]``.

    Valid when ``||A - A~|| <= q / ||A^-1||``.
    """
    if not 0 < q < 1:
        raise ValueError("q must lie in (0, 1)")
    if A_delta > q / A_norm_inv:
        raise HypothesisViolated(f"||A - A~|| = {A_delta:g} exceeds q/||A^-1|| = {q / A_norm_inv:g}")
    return A_norm_inv / (1 - q) * (A_norm_inv * A_delta * b_norm + b_delta)


# -- the full ledger ---------------------------------------------------------------

def compute_ledger(
    p: Polynomial,
    kappa: int,
    annulus: AnnulusParams,
    n: int,
    config: BoundsConfig,
    roots: Sequence[complex] | None = None,
) -> BoundLedger:
    """Every bound the pipeline needs, for the monic polynomial ``p``."""
    mode, delta0 = resolve_delta0(p, kappa, config.delta0_mode, roots)
    norm_p = one_norm(p)
    m1, mK, rho, q = annulus.m1, annulus.mK, annulus.rho, config.q
    t_ann, t_rough = toeplitz_norm_bounds(mK=mK, m1=m1, rho=rho, n=n)
    k_ann, k_rough = condition_bounds(delta0=delta0, norm_p=norm_p, mK=mK, m1=m1, rho=rho, n=n)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", CertificationWarning)
        acc = accuracy_bounds(n=n, delta0=delta0, norm_p=norm_p, m1=m1, mK=mK, rho=rho,
                              Delta=config.delta, q=q)
    for w in caught:
        warnings.warn(w.message, w.category, stacklevel=2)
    d_tilde = math.ceil(math.log10(min(k_ann, k_rough)))
    if config.eps_tilde_override is not None:
        eps_tilde, source = float(config.eps_tilde_override), "override"
    else:
        eps_tilde, source = 10.0 ** (-acc.d - d_tilde), "recipe"
    ell = choose_ell(eps_tilde, n=n, kappa=kappa, rho=rho, mK=mK, delta0=delta0,
                     norm_p=norm_p, q=q)
    b1, b2, holds = window_perturbation_bounds(n=n, delta0=delta0, norm_p=norm_p, mK=mK,
                                               rho=rho, ell=ell, q=q, kappa=kappa)
    return BoundLedger(
        delta0=delta0, delta0_mode=mode, boyd_delta=BOYD_DELTA, norm_p=norm_p, m1=m1, mK=mK,
        rho=rho, n=n, q=q, delta=config.delta,
        toeplitz_norm_annulus=t_ann, toeplitz_norm_rough=t_rough,
        cond_bound_annulus=k_ann, cond_bound_rough=k_rough,
        eps1=acc.eps1, eps2=acc.eps2, eps=acc.eps, eps_pow10=acc.eps_pow10, d=acc.d,
        d_tilde=d_tilde, eps_tilde=eps_tilde, eps_tilde_source=source, ell=ell,
        window_entry_bound=truncation_bound(mK, rho, ell),
        window_bound_p1=b1, window_bound_p2=b2, window_hypothesis_holds=holds,
        certified=acc.certified,
    )
