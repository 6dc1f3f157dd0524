"""Scalar backends: binary64, extended (mpmath) and exact rationals.

Every numerical routine in the package takes a :class:`Precision` and keeps
its data in numpy arrays whose scalar type is chosen by the backend:

* ``native``   -- ``complex128`` arrays, LAPACK through numpy/scipy;
* ``ext:<d>``  -- object arrays of ``mpmath.mpc`` bound to a private
  ``MPContext`` with ``d`` significant digits;
* ``exact``    -- object arrays of :class:`fractions.Fraction` (real only).
  Meant for verification on hand-made rational data; there is no SVD and
  no root of unity in this backend.

Only the small set of primitives the algorithms need is exposed here.
"""

from __future__ import annotations

import warnings
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath
import numpy as np
import scipy.linalg

from .errors import SingularSystem

NATIVE_EPS = float(np.finfo(float).eps)


class Precision:
    """Arithmetic backend shared by all modules.

    Parameters
    ----------
    kind : {"native", "extended", "exact"}
    digits : int, optional
        Significant decimal digits for the extended backend (at least 20).
    """

    def __init__(self, kind: str = "native", digits: int | None = None):
        if kind not in ("native", "extended", "exact"):
            raise ValueError(f"unknown precision kind {kind!r}")
        if kind == "extended":
            if digits is None or digits < 20:
                raise ValueError("extended precision needs digits >= 20")
            self.mp = mpmath.MPContext()
            self.mp.dps = int(digits)
        else:
            self.mp = None
            digits = 16 if kind == "native" else None
        self.kind = kind
        self.digits = digits

    # -- construction -----------------------------------------------------

    @classmethod
    def native(cls) -> "Precision":
        return cls("native")

    @classmethod
    def extended(cls, digits: int = 20) -> "Precision":
        return cls("extended", digits)

    @classmethod
    def exact(cls) -> "Precision":
        return cls("exact")

    @classmethod
    def parse(cls, text: str) -> "Precision":
        """Parse ``native``, ``exact`` or ``ext:<digits>``."""
        text = text.strip().lower()
        if text in ("native", "native64", "binary64"):
            return cls.native()
        if text == "exact":
            return cls.exact()
        if text.startswith("ext:"):
            return cls.extended(int(text[4:]))
        raise ValueError(f"cannot parse precision {text!r}")

    @property
    def name(self) -> str:
        if self.kind == "extended":
            return f"ext:{self.digits}"
        return self.kind

    @property
    def is_native(self) -> bool:
        return self.kind == "native"

    @property
    def is_exact(self) -> bool:
        return self.kind == "exact"

    @property
    def eps(self) -> float:
        """Unit roundoff of the backend (0 for exact arithmetic)."""
        if self.kind == "native":
            return NATIVE_EPS
        if self.kind == "extended":
            return float(self.mp.eps)
        return 0.0

    def __repr__(self) -> str:
        return f"Precision({self.name!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Precision) and self.name == other.name

    def __hash__(self) -> int:
        return hash(self.name)

    # -- scalars ----------------------------------------------------------

    def scalar(self, x):
        """Convert ``x`` (int, float, complex, Fraction, str, mpf/mpc) to a backend scalar."""
        if isinstance(x, str):
            return self.parse_real(x)
        if self.kind == "native":
            if isinstance(x, Fraction):
                return complex(float(x))
            if hasattr(x, "imag") and hasattr(x, "real") and not isinstance(x, (int, float, complex)):
                return complex(float(x.real), float(x.imag))
            return complex(x)
        if self.kind == "extended":
            mp = self.mp
            if isinstance(x, Fraction):
                return mp.mpc(mp.mpf(x.numerator) / x.denominator)
            if isinstance(x, (int, float)):
                return mp.mpc(x)
            re, im = x.real, x.imag
            return mp.mpc(self._mpf(re), self._mpf(im))
        if isinstance(x, complex):
            if x.imag != 0:
                raise TypeError("exact backend supports real rationals only")
            x = x.real
        if hasattr(x, "imag") and not isinstance(x, (int, float, Fraction)):
            if x.imag != 0:
                raise TypeError("exact backend supports real rationals only")
            x = x.real
        return Fraction(x)

    def _mpf(self, x):
        mp = self.mp
        if isinstance(x, Fraction):
            return mp.mpf(x.numerator) / x.denominator
        return mp.mpf(x)

    def parse_real(self, text: str):
        """Parse a decimal or ``p/q`` string without a detour through binary64."""
        text = text.strip()
        if self.kind == "exact":
            return Fraction(text)
        if "/" in text:
            return self.scalar(Fraction(text))
        if self.kind == "native":
            return complex(float(text))
        return self.mp.mpc(self.mp.mpf(text))

    def complex_from_parts(self, re, im):
        """Build ``re + i*im`` from two real inputs (strings allowed)."""
        r = self.parse_real(re) if isinstance(re, str) else self.scalar(re)
        i = self.parse_real(im) if isinstance(im, str) else self.scalar(im)
        if self.kind == "exact":
            if i != 0:
                raise TypeError("exact backend supports real rationals only")
            return r
        return r + (1j if self.kind == "native" else self.mp.j) * i

    def asarray(self, values: Iterable) -> np.ndarray:
        vals = [self.scalar(v) for v in values]
        if self.kind == "native":
            return np.array(vals, dtype=complex)
        out = np.empty(len(vals), dtype=object)
        out[:] = vals
        return out

    def zeros(self, shape) -> np.ndarray:
        if self.kind == "native":
            return np.zeros(shape, dtype=complex)
        out = np.empty(shape, dtype=object)
        out.fill(self.scalar(0))
        return out

    def one(self):
        return self.scalar(1)

    def abs(self, x) -> float:
        return float(abs(x))

    def to_complex(self, x) -> complex:
        if self.kind == "exact":
            return complex(float(x))
        return complex(float(x.real), float(x.imag)) if self.kind == "extended" else complex(x)

    def format_real(self, x) -> str:
        """Decimal string for a real backend scalar (or float)."""
        if self.kind == "extended" and not isinstance(x, (int, float)):
            return self.mp.nstr(self.mp.mpf(x), self.digits, min_fixed=-4, max_fixed=self.digits)
        if isinstance(x, Fraction):
            return str(x)
        return repr(float(x))

    def format_complex(self, x) -> list[str]:
        if self.kind == "extended":
            return [self.format_real(x.real), self.format_real(x.imag)]
        if self.kind == "exact":
            return [str(Fraction(x)), "0"]
        x = complex(x)
        return [repr(x.real), repr(x.imag)]

    # -- transcendental helpers -------------------------------------------

    def roots_of_unity(self, ell: int) -> np.ndarray:
        """``exp(2*pi*i*j/ell)`` for ``j = 0..ell-1``."""
        if self.kind == "exact":
            raise TypeError("roots of unity are not available in exact arithmetic")
        if self.kind == "native":
            t = 2.0 * np.arange(ell) / ell
            return np.cos(np.pi * t) + 1j * np.sin(np.pi * t)
        mp = self.mp
        out = np.empty(ell, dtype=object)
        for j in range(ell):
            t = mp.mpf(2 * j) / ell
            out[j] = mp.mpc(mp.cospi(t), mp.sinpi(t))
        return out

    # -- dense linear algebra ---------------------------------------------

    def solve(self, A: np.ndarray, b: np.ndarray, refine: int = 1) -> np.ndarray:
        """Solve ``A x = b`` by LU with ``refine`` steps of iterative refinement."""
        n = A.shape[0]
        if A.shape != (n, n) or b.shape[0] != n:
            raise ValueError("solve expects a square system")
        if self.kind == "native":
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
                lu, piv = scipy.linalg.lu_factor(A, check_finite=True)
            d = np.abs(np.diag(lu))
            if d.min() == 0 or d.min() <= n * NATIVE_EPS * d.max():
                raise SingularSystem(f"LU pivot ratio {d.min() / max(d.max(), 1e-300):.3e}")
            x = scipy.linalg.lu_solve((lu, piv), b)
            for _ in range(refine):
                x = x + scipy.linalg.lu_solve((lu, piv), b - A @ x)
            return x
        if self.kind == "extended":
            mp = self.mp
            Am = mp.matrix(A.tolist())
            try:
                x = mp.lu_solve(Am, mp.matrix(list(b)))
                for _ in range(refine):
                    r = b - A @ np.array(list(x), dtype=object)
                    x = x + mp.lu_solve(Am, mp.matrix(list(r)))
            except ZeroDivisionError as exc:
                raise SingularSystem("matrix is numerically singular") from exc
            out = np.empty(n, dtype=object)
            out[:] = [mp.mpc(v) for v in x]
            return out
        return _fraction_solve(A, b)

    def svd(self, A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Singular values (descending, as floats) and the full ``Vh``.

        Rows of ``Vh`` beyond the numerical rank, conjugated, span the
        right null space of ``A``.
        """
        if self.kind == "native":
            _, s, vh = np.linalg.svd(A, full_matrices=True)
            return s, vh
        if self.kind == "extended":
            mp = self.mp
            _, s, v = mp.svd_c(mp.matrix(A.tolist()), full_matrices=True)
            svals = np.array([float(x) for x in s])
            vh = np.empty((v.rows, v.cols), dtype=object)
            for i in range(v.rows):
                for j in range(v.cols):
                    vh[i, j] = mp.mpc(v[i, j])
            return svals, vh
        raise TypeError("exact backend has no SVD; use exact_null_space")

    def exact_null_space(self, A: np.ndarray) -> tuple[int, list[np.ndarray]]:
        """Rank and a null-space basis by exact row reduction."""
        if self.kind != "exact":
            raise TypeError("exact_null_space needs the exact backend")
        return fraction_null_space(A)


def _fraction_solve(A: np.ndarray, b: Sequence) -> np.ndarray:
    n = A.shape[0]
    M = [[Fraction(A[i, j]) for j in range(n)] + [Fraction(b[i])] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise SingularSystem("exactly singular matrix")
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col] * inv
                M[r] = [a - f * c for a, c in zip(M[r], M[col])]
    out = np.empty(n, dtype=object)
    out[:] = [M[i][n] / M[i][i] for i in range(n)]
    return out


def fraction_null_space(A: np.ndarray) -> tuple[int, list[np.ndarray]]:
    rows, cols = A.shape
    M = [[Fraction(A[i, j]) for j in range(cols)] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * p for a, p in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * cols
        v[fcol] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -M[i][fcol]
        arr = np.empty(cols, dtype=object)
        arr[:] = v
        basis.append(arr)
    return len(pivots), basis
