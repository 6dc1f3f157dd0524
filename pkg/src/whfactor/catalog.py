"""Reference polynomials with known behaviour, as exact rational data.

Each entry is a list of ``(re, im)`` Fraction pairs in ascending powers plus
the run parameters it is usually factored with.  They serve as regression
inputs for the test suite and as ready-made CLI input files
(:func:`input_document`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as F


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    coefficients: tuple
    rho: float
    delta: str
    eps_tilde: str
    delta0_mode: str
    kappa: int
    r: float | None = None
    R: float | None = None
    exact_p1_roots: tuple = field(default=())
    exact_p2_roots: tuple = field(default=())


def _expand(roots):
    """Monic product of ``(z - r)`` in exact rationals, ascending order."""
    c = [F(1)]
    for r in roots:
        nxt = [F(0)] * (len(c) + 1)
        for j, a in enumerate(c):
            nxt[j + 1] += a
            nxt[j] -= r * a
        c = nxt
    return c


def expand_roots(roots) -> list:
    return _expand([F(r) for r in roots])


def _real(cs):
    return tuple((F(c), F(0)) for c in cs)


# (z+1/2)(z+1/3)...(z+1/12) * (z+2)(z+3)...(z+12)
_EX1_P1 = tuple(F(-1, k) for k in range(2, 13))
_EX1_P2 = tuple(F(-k) for k in range(2, 13))

SPECTRAL_REAL = CatalogEntry(
    name="spectral-real",
    coefficients=_real(_expand(_EX1_P1 + _EX1_P2)),
    rho=0.51,
    delta="1e-15",
    eps_tilde="1e-22",
    delta0_mode="one",
    kappa=11,
    exact_p1_roots=_EX1_P1,
    exact_p2_roots=_EX1_P2,
)

# sum_{i=0}^{10} z^i + 4 z^5
PALINDROMIC = CatalogEntry(
    name="palindromic",
    coefficients=_real([5 if i == 5 else 1 for i in range(11)]),
    rho=0.83,
    delta="1e-12",
    eps_tilde="1e-17",
    delta0_mode="self-inversive",
    kappa=5,
)

RANDOM_COMPLEX = CatalogEntry(
    name="random-complex",
    coefficients=(
        (F(-61, 60), F(16, 9)),
        (F(39, 10), F(58, 15)),
        (F(-1), F(814, 135)),
        (F(7, 3), F(-2, 3)),
        (F(-31, 6), F(68, 135)),
        (F(43, 60), F(764, 135)),
        (F(-43, 60), F(106, 135)),
        (F(-28, 15), F(514, 135)),
        (F(223, 60), F(848, 135)),
        (F(13, 10), F(0)),
        (F(-17, 30), F(0)),
        (F(1), F(0)),
    ),
    rho=0.943396,
    r=0.9,
    R=1.06,
    delta="1e-18",
    eps_tilde="1e-26",
    delta0_mode="general",
    kappa=3,
)

CATALOG = {e.name: e for e in (SPECTRAL_REAL, PALINDROMIC, RANDOM_COMPLEX)}


def polynomial(entry: CatalogEntry, ctx=None):
    """The entry as a :class:`~whfactor.poly.Polynomial` in ``ctx``."""
    from .poly import Polynomial
    from .precision import Precision

    ctx = ctx or Precision.native()
    if ctx.is_exact:
        return Polynomial([re for re, _ in entry.coefficients], ctx)
    return Polynomial([ctx.complex_from_parts(re, im) for re, im in entry.coefficients], ctx)


def input_document(entry: CatalogEntry) -> dict:
    """CLI input JSON for the entry; rationals are written as ``p/q`` strings."""
    doc = {
        "coefficients": [[str(re), str(im)] for re, im in entry.coefficients],
        "rho": repr(entry.rho),
        "delta": entry.delta,
    }
    if entry.r is not None:
        doc["r"] = repr(entry.r)
        doc["R"] = repr(entry.R)
    return doc
