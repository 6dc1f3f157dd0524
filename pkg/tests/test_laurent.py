from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from whfactor import catalog
from whfactor.contour import AnnulusParams, choose_annulus
from whfactor.errors import EllTooSmall, EpsTooLarge, IndexOutOfWindow, ZeroOnCircle
from whfactor.laurent import LaurentWindow, approx_coefficient, build_window, choose_ell, truncation_bound
from whfactor.oracle import exact_laurent
from whfactor.poly import Polynomial
from whfactor.precision import Precision

from conftest import toy_coefficient


def test_toy_coefficient_ell_64(toy_poly):
    ann = choose_annulus(toy_poly, 0.7)
    bound = truncation_bound(ann.mK, ann.rho, 64)
    assert abs(approx_coefficient(toy_poly, 0, 64) - (-1 / 3)) < bound
    assert abs(approx_coefficient(toy_poly, 1, 64) - (-1 / 6)) < bound
    assert abs(approx_coefficient(toy_poly, -1, 64) - (-2 / 3)) < bound


def test_linear_coefficient():
    p = Polynomial([-2, 1])
    ann = choose_annulus(p, 0.6)
    assert abs(approx_coefficient(p, 0, 32) + 0.5) < truncation_bound(ann.mK, ann.rho, 32)


def test_build_window_example_1(example_annuli):
    ann = example_annuli["spectral-real"]
    p = catalog.polynomial(catalog.SPECTRAL_REAL).monic()
    w = build_window(p, 23, 11, 136, ann)
    assert len(w.values) == 47 and (w.lo, w.hi) == (-34, 12)
    assert w.per_entry_bound == pytest.approx(2 / 30.448076 * 0.51**68 / (1 - 0.51**136), rel=1e-6)
    assert w.per_entry_bound == pytest.approx(8.555435e-22, rel=1e-6)


def test_build_window_toy_matches_partial_fractions(toy_poly):
    ann = choose_annulus(toy_poly, 0.7)
    w = build_window(toy_poly, 2, 1, 64, ann)
    for k in range(w.lo, w.hi + 1):
        assert abs(w.c(k) - float(toy_coefficient(k))) < w.per_entry_bound


def test_build_window_preconditions(toy_poly):
    ann = choose_annulus(toy_poly, 0.7)
    with pytest.raises(ValueError):
        build_window(toy_poly, 0, 1, 64, ann)
    with pytest.raises(EllTooSmall):
        build_window(toy_poly, 3, 1, 6, ann)
    with pytest.raises(ValueError):
        build_window(toy_poly, 3, 1, 63, ann)


def test_window_accessors():
    w = LaurentWindow.from_values(-2, [1, 2, 3, 4])
    assert w.c(-2) == 1 and w.hi == 1
    with pytest.raises(IndexOutOfWindow):
        w.c(2)
    assert list(w.slice(-1, 0).values) == [2, 3]


def test_sample_on_zero_rejected():
    with pytest.raises(ZeroOnCircle):
        approx_coefficient(Polynomial([-1j, 1]), 0, 8)


@pytest.mark.parametrize(
    "eps, n, kappa, rho, mK, delta0, norm, ell",
    [
        (1e-22, 23, 11, 0.51, 30.448076, 1.0, 20237817600, 136),
        (1e-17, 11, 5, 0.83, 0.062855, 6.0, 15, 418),
        (1e-26, 12, 3, 0.943396, 0.241435, 3663.225630, 42.442968, 1994),
    ],
)
def test_choose_ell_examples(eps, n, kappa, rho, mK, delta0, norm, ell):
    assert choose_ell(eps, n=n, kappa=kappa, rho=rho, mK=mK, delta0=delta0, norm_p=norm) == ell


def test_choose_ell_rejects_large_eps():
    with pytest.raises(EpsTooLarge):
        choose_ell(1.0, n=3, kappa=1, rho=0.5, mK=0.2, delta0=1, norm_p=4.5)


def test_extended_window_is_real_for_real_p():
    ctx = Precision.extended(25)
    p = catalog.polynomial(catalog.PALINDROMIC, ctx)
    ann = AnnulusParams(0.83, 0.83, 1 / 0.83, 1.5424, 0.0628)
    w = build_window(p, 11, 5, 60, ann)
    assert max(abs(v.imag) for v in w.values) < 1e-22


def _roots(draw_list):
    return [m * np.exp(1j * a) for m, a in draw_list]


root_lists = st.lists(
    st.tuples(st.one_of(st.floats(0.2, 0.8), st.floats(1.25, 5.0)), st.floats(0, 2 * np.pi)),
    min_size=1, max_size=8, unique_by=lambda t: (round(t[0], 3), round(t[1], 3)),
)


def _setup(pairs):
    roots = _roots(pairs)
    c = np.array([1.0 + 0j])
    for r in roots:
        c = np.convolve(c, [-r, 1])
    p = Polynomial(c)
    inner = max([abs(r) for r in roots if abs(r) < 1], default=0.5)
    outer = min([abs(r) for r in roots if abs(r) > 1], default=2.0)
    rho = max((1 + inner) / 2, 2 / (1 + outer))
    return roots, p, rho


@settings(max_examples=200)
@given(root_lists, st.sampled_from([16, 32, 64]))
def test_laurent_error_within_bound(pairs, ell):
    roots, p, rho = _setup(pairs)
    gaps = [abs(a - b) for i, a in enumerate(roots) for b in roots[i + 1:]]
    if gaps and min(gaps) < 1e-3:
        return
    ann = choose_annulus(p, rho)
    bound = truncation_bound(ann.mK, ann.rho, ell)
    for k in (-ell // 2, -3, -1, 0, 1, 4, ell // 2):
        exact = exact_laurent(roots, k)
        err = abs(approx_coefficient(p, k, ell) - exact)
        assert err <= bound + 1e-12 * max(1.0, 1 / ann.mK)


@settings(max_examples=30)
@given(root_lists)
def test_doubling_check(pairs):
    _, p, rho = _setup(pairs)
    ann = choose_annulus(p, rho)
    kappa = sum(1 for m, _ in pairs if m < 1)
    n = max(kappa, p.degree - kappa) + 1
    ell = 2 * (n + kappa) + 2
    ell += ell % 2
    a = build_window(p, n, kappa, ell, ann)
    b = build_window(p, n, kappa, 4 * ell, ann)
    slack = 1e-12 * max(1.0, 1 / ann.mK)
    assert np.max(np.abs(a.values - b.values)) <= a.per_entry_bound + b.per_entry_bound + slack
