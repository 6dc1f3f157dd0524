"""Dense complex polynomials and the two norms used by the bounds.

Coefficients are stored in ascending order: ``coeffs[j]`` multiplies ``z**j``.
The 1-norm ``||p|| = sum |p_j|`` is the norm every a-priori bound is stated
in; the sup-norm on a circle and the minimum modulus on a circle come from
:func:`circle_extrema`.
"""

from __future__ import annotations

import math
from typing import Iterable

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import ZeroOnCircle
from .precision import Precision

DEFAULT_SAMPLES = 4096
ZERO_THRESHOLD = 1e-12


class Polynomial:
    """Immutable dense polynomial over a :class:`Precision` backend.

    Trailing coefficients that are exactly zero are dropped on
    construction, so ``degree`` is the true degree (0 for constants,
    including the zero polynomial).  Use :meth:`coeff` to read a
    coefficient at a formal position beyond the degree.
    """

    __slots__ = ("coeffs", "ctx")

    def __init__(self, coeffs: Iterable, ctx: Precision | None = None):
        ctx = ctx or Precision.native()
        arr = coeffs if isinstance(coeffs, np.ndarray) and _matches(coeffs, ctx) else ctx.asarray(coeffs)
        arr = np.array(arr, copy=True)
        if arr.size == 0:
            arr = ctx.zeros(1)
        last = arr.size - 1
        while last > 0 and arr[last] == 0:
            last -= 1
        arr = arr[: last + 1]
        arr.setflags(write=False)
        self.coeffs = arr
        self.ctx = ctx

    @classmethod
    def monomial(cls, power: int, ctx: Precision | None = None, coef=1) -> "Polynomial":
        ctx = ctx or Precision.native()
        c = ctx.zeros(power + 1)
        c[power] = ctx.scalar(coef)
        return cls(c, ctx)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    @property
    def leading(self):
        return self.coeffs[-1]

    def coeff(self, j: int):
        if 0 <= j <= self.degree:
            return self.coeffs[j]
        return self.ctx.scalar(0)

    def padded(self, length: int) -> np.ndarray:
        """Coefficient vector zero-padded (never truncated) to ``length``."""
        if length < self.coeffs.size:
            raise ValueError("padding length below degree + 1")
        out = self.ctx.zeros(length)
        out[: self.coeffs.size] = self.coeffs
        return out

    def is_zero(self) -> bool:
        return self.degree == 0 and self.coeffs[0] == 0

    def __call__(self, z):
        return evaluate(self, z)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return multiply(self, other)
        return Polynomial(self.coeffs * self.ctx.scalar(other), self.ctx)

    __rmul__ = __mul__

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(self.coeffs.size, other.coeffs.size)
        return Polynomial(self.padded(n) + other.padded(n), self.ctx)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        n = max(self.coeffs.size, other.coeffs.size)
        return Polynomial(self.padded(n) - other.padded(n), self.ctx)

    def __neg__(self) -> "Polynomial":
        return Polynomial(-self.coeffs, self.ctx)

    def __truediv__(self, scalar) -> "Polynomial":
        return Polynomial(self.coeffs / self.ctx.scalar(scalar), self.ctx)

    def __repr__(self) -> str:
        return f"Polynomial({[self.ctx.to_complex(c) for c in self.coeffs]!r}, {self.ctx.name})"

    def shift(self, k: int) -> "Polynomial":
        """Multiply by ``z**k`` (``k >= 0``)."""
        if k < 0:
            raise ValueError("negative shift")
        return Polynomial(np.concatenate([self.ctx.zeros(k), self.coeffs]), self.ctx)

    def monic(self) -> "Polynomial":
        return self / self.leading

    def derivative(self) -> "Polynomial":
        if self.degree == 0:
            return Polynomial([0], self.ctx)
        k = self.ctx.asarray(range(1, self.degree + 1))
        return Polynomial(self.coeffs[1:] * k, self.ctx)

    def reflected(self) -> "Polynomial":
        """``z**deg * conj(p(1/conj(z)))``: roots mapped by ``xi -> 1/conj(xi)``."""
        return Polynomial(np.conj(self.coeffs[::-1]), self.ctx)

    def scaled(self, lam) -> "Polynomial":
        """``p(lam * z)``."""
        lam = self.ctx.scalar(lam)
        powers = self.ctx.zeros(self.coeffs.size)
        acc = self.ctx.one()
        for j in range(self.coeffs.size):
            powers[j] = acc
            acc = acc * lam
        return Polynomial(self.coeffs * powers, self.ctx)

    def to(self, ctx: Precision) -> "Polynomial":
        return Polynomial(ctx.asarray(self.coeffs), ctx)

    def native_coeffs(self) -> np.ndarray:
        if self.ctx.is_native:
            return np.asarray(self.coeffs)
        return np.array([self.ctx.to_complex(c) for c in self.coeffs], dtype=complex)


def _matches(arr: np.ndarray, ctx: Precision) -> bool:
    return (arr.dtype == complex) if ctx.is_native else (arr.dtype == object)


def evaluate(p: Polynomial, z):
    """Horner evaluation of ``p`` at a scalar or an array of points."""
    acc = p.coeffs[-1] * np.ones_like(z) if isinstance(z, np.ndarray) else p.coeffs[-1]
    for c in p.coeffs[-2::-1]:
        acc = acc * z + c
    return acc


def one_norm(p: Polynomial) -> float:
    """Hölder 1-norm of the coefficient vector."""
    return float(sum(abs(c) for c in p.coeffs))


def multiply(p: Polynomial, q: Polynomial) -> Polynomial:
    return Polynomial(np.convolve(p.coeffs, q.coeffs), p.ctx)


def circle_extrema(
    p: Polynomial,
    radius: float = 1.0,
    samples: int = DEFAULT_SAMPLES,
    zero_threshold: float = ZERO_THRESHOLD,
) -> tuple[float, float]:
    """Minimum and maximum of ``|p|`` on the circle ``|z| = radius``.

    A uniform grid is refined by bounded golden-section search around the
    grid minimiser and maximiser.  Values are computed in binary64, which is
    plenty for bound inputs quoted to six digits.

    Raises
    ------
    ZeroOnCircle
        If the minimum falls below ``zero_threshold * ||p||``.
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    samples = max(samples, 4 * (p.degree + 1))
    c = p.native_coeffs()
    rev = c[::-1]

    def mod(phi):
        return abs(np.polyval(rev, radius * np.exp(1j * phi)))

    phi = np.linspace(0.0, 2 * math.pi, samples, endpoint=False)
    vals = np.abs(np.polyval(rev, radius * np.exp(1j * phi)))
    h = 2 * math.pi / samples
    i_min, i_max = int(np.argmin(vals)), int(np.argmax(vals))

    lo = minimize_scalar(mod, bounds=(phi[i_min] - h, phi[i_min] + h), method="bounded",
                         options={"xatol": 1e-12})
    hi = minimize_scalar(lambda t: -mod(t), bounds=(phi[i_max] - h, phi[i_max] + h),
                         method="bounded", options={"xatol": 1e-12})
    vmin = min(float(vals[i_min]), float(lo.fun))
    vmax = max(float(vals[i_max]), float(-hi.fun))

    norm = float(np.sum(np.abs(c)) * max(1.0, radius) ** p.degree)
    if vmin < zero_threshold * norm:
        raise ZeroOnCircle(
            f"min |p| = {vmin:.3e} on |z| = {radius:g} is below "
            f"{zero_threshold:g} * ||p||; p vanishes numerically on the contour"
        )
    return vmin, vmax
