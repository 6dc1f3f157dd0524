import math
import warnings

import pytest
from hypothesis import given, strategies as st

from whfactor import catalog
from whfactor.bounds import (
    BOYD_DELTA,
    BoundsConfig,
    accuracy_bounds,
    compute_ledger,
    condition_bounds,
    general_delta0,
    linear_system_error,
    resolve_delta0,
    rounding_floor,
    select_delta0,
    toeplitz_norm_bounds,
    window_perturbation_bounds,
)
from whfactor.contour import choose_annulus
from whfactor.errors import CertificationWarning, HypothesisViolated, SymmetryViolation
from whfactor.poly import Polynomial

# published inputs: (m1, mK, rho, n, delta0, ||p||)
EX1 = dict(m1=3326400.0, mK=30.448076, rho=0.51, n=23, delta0=1.0, norm_p=20237817600.0)
EX2 = dict(m1=1.542464, mK=0.062855, rho=0.83, n=11, delta0=6.0, norm_p=15.0)
EX3 = dict(m1=2.293009, mK=0.241435, rho=0.943396, n=12, delta0=3663.225630, norm_p=42.442968)


def _sub(d, *keys):
    return {k: d[k] for k in keys}


def test_boyd_constant():
    assert BOYD_DELTA == pytest.approx(1.7916228120695934247, rel=1e-15)


def test_delta0_examples():
    p3 = catalog.polynomial(catalog.RANDOM_COMPLEX).monic()
    assert select_delta0(p3, 3, "general") == pytest.approx(3663.225630, rel=1e-9)
    p2 = catalog.polynomial(catalog.PALINDROMIC).monic()
    assert select_delta0(p2, 5, "self-inversive") == 6
    assert resolve_delta0(p2, 5) == ("self-inversive", 6.0)
    p1 = catalog.polynomial(catalog.SPECTRAL_REAL).monic()
    assert select_delta0(p1, 11, "one") == 1
    assert resolve_delta0(p1, 11, 2.5) == ("manual", 2.5)
    assert general_delta0(11, 3) == select_delta0(p3, 3, "general")


def test_delta0_auto_uses_roots_for_exact_case():
    p1 = catalog.polynomial(catalog.SPECTRAL_REAL).monic()
    roots = [-1 / k for k in range(2, 13)] + [-k for k in range(2, 13)]
    assert resolve_delta0(p1, 11, "auto", roots) == ("one", 1.0)
    # without roots the exact case cannot be confirmed; the palindrome gives nu/2 + 1
    assert resolve_delta0(p1, 11, "auto") == ("self-inversive", 12.0)
    bad = [r if r != -2 else 2 for r in roots]
    assert resolve_delta0(p1, 11, "auto", bad)[0] == "self-inversive"


def test_delta0_symmetry_violations():
    p3 = catalog.polynomial(catalog.RANDOM_COMPLEX).monic()
    with pytest.raises(SymmetryViolation):
        select_delta0(p3, 3, "self-inversive")
    with pytest.raises(SymmetryViolation):
        select_delta0(p3, 3, "one")
    with pytest.raises(SymmetryViolation):  # palindromic but the index is not nu/2
        select_delta0(Polynomial([1, 5, 5, 1]), 1, "self-inversive")


def test_toeplitz_norm_bounds():
    _, rough = toeplitz_norm_bounds(**_sub(EX2, "mK", "m1", "rho", "n"))
    assert rough == pytest.approx(23 / 1.542464, rel=1e-12)
    assert rough == pytest.approx(14.9112, rel=1e-4)
    ann, _ = toeplitz_norm_bounds(**_sub(EX1, "mK", "m1", "rho", "n"))
    assert ann == pytest.approx(0.101209, rel=1e-5)
    ann0, _ = toeplitz_norm_bounds(mK=0.25, m1=1.0, rho=0.0, n=3)
    assert ann0 == 4.0


@pytest.mark.parametrize("inputs, expected", [(EX1, 2.859480e5), (EX2, 1342.008991), (EX3, 1.695132e6)])
def test_rough_condition_bounds(inputs, expected):
    _, rough = condition_bounds(**inputs)
    assert rough == pytest.approx(expected, rel=1e-3)
    assert min(condition_bounds(**inputs)) >= 1


@pytest.mark.parametrize("inputs, Delta, expected, which", [
    (EX1, 1e-15, 0.695883e-5, "eps2"),
    (EX2, 1e-12, 0.536458e-4, "eps1"),
    (EX3, 1e-18, 0.653797e-4, "eps1"),
])
def test_accuracy_bounds(inputs, Delta, expected, which):
    acc = accuracy_bounds(**inputs, Delta=Delta)
    assert acc.eps == pytest.approx(expected, rel=1e-3)
    assert getattr(acc, which) == acc.eps and acc.certified
    assert acc.eps_pow10 <= acc.eps < 10 * acc.eps_pow10


def test_accuracy_bounds_example_1_eps1():
    assert accuracy_bounds(**EX1, Delta=1e-15).eps1 == pytest.approx(7.04e-7, rel=1e-3)


def test_accuracy_bounds_uncertified_warns():
    with pytest.warns(CertificationWarning):
        acc = accuracy_bounds(**EX2, Delta=1e-2)
    assert not acc.certified and acc.eps > 0


def test_window_perturbation_example_1():
    b1, b2, holds = window_perturbation_bounds(**_sub(EX1, "n", "delta0", "norm_p", "mK", "rho"), ell=136)
    # verbatim evaluation; the sampling order for 1e-5 on both factors is 182
    assert b1 == pytest.approx(6.38356, rel=1e-4) and b2 == pytest.approx(32.938, rel=1e-4)
    assert holds
    args = _sub(EX1, "n", "delta0", "norm_p", "mK", "rho")
    assert max(window_perturbation_bounds(**args, ell=182)[:2]) < 1e-5
    assert max(window_perturbation_bounds(**args, ell=180)[:2]) >= 1e-5


def test_window_perturbation_example_2_hypothesis():
    b1, b2, holds = window_perturbation_bounds(**_sub(EX2, "n", "delta0", "norm_p", "mK", "rho"),
                                               ell=418, kappa=5)
    assert holds and b1 < 1e-7 and b2 < 1e-9


def test_window_perturbation_preconditions():
    with pytest.raises(ValueError):
        window_perturbation_bounds(n=3, delta0=1, norm_p=1, mK=1, rho=0.5, ell=11)
    with pytest.raises(ValueError):
        window_perturbation_bounds(n=3, delta0=1, norm_p=1, mK=1, rho=0.5, ell=6, kappa=1)


@given(st.integers(min_value=25, max_value=400))
def test_window_perturbation_monotone_in_ell(half):
    args = _sub(EX2, "n", "delta0", "norm_p", "mK", "rho")
    a = window_perturbation_bounds(**args, ell=2 * half)
    b = window_perturbation_bounds(**args, ell=2 * half + 2)
    assert b[0] < a[0] and b[1] < a[1]


def test_linear_system_error():
    assert linear_system_error(2.0, 0.0, 1.0, 0.0) == 0
    assert linear_system_error(2.0, 0.1, 1.0, 0.0, 0.5) == pytest.approx(0.8)
    with pytest.raises(HypothesisViolated):
        linear_system_error(2.0, 0.3, 1.0, 0.0, 0.5)


def test_linear_system_error_matches_kernel_bound():
    # ||T^-1|| <= delta0 ||p|| and b = e1: the p2 bound is delta0^2 ||p||^2 dc / (1 - q)
    P, dc = 6.0 * 15.0, 1e-9
    assert linear_system_error(P, dc, 1.0, 0.0) == pytest.approx(P**2 * dc / 0.5)


def test_rounding_floor():
    assert rounding_floor(unit_roundoff=1e-16, cond_bound=1e5, delta0=2, norm_p=3) == pytest.approx(6e-11)


def _ledger(entry, override=True):
    pn = catalog.polynomial(entry).monic()
    ann = choose_annulus(pn, entry.rho, entry.kappa, entry.r, entry.R)
    cfg = BoundsConfig(float(entry.delta), delta0_mode=entry.delta0_mode,
                       eps_tilde_override=float(entry.eps_tilde) if override else None)
    return compute_ledger(pn, entry.kappa, ann, pn.degree + 1, cfg)


@pytest.mark.parametrize("entry, ell, recipe", [
    (catalog.SPECTRAL_REAL, 136, 1e-12),
    (catalog.PALINDROMIC, 418, 1e-9),
    (catalog.RANDOM_COMPLEX, 1994, 1e-12),
])
def test_ledger_ell_and_recipe(entry, ell, recipe):
    led = _ledger(entry)
    assert led.ell == ell and led.eps_tilde_source == "override"
    rec = _ledger(entry, override=False)
    assert rec.eps_tilde == pytest.approx(recipe) and rec.eps_tilde_source == "recipe"
    assert rec.eps_tilde == pytest.approx(10.0 ** (-rec.d - rec.d_tilde))
    assert 10 ** (rec.d_tilde - 1) < rec.cond_bound <= 10**rec.d_tilde
    d = rec.as_dict()
    assert d["cond_bound"] == rec.cond_bound and d["ell"] == rec.ell


def test_bounds_config_validation():
    with pytest.raises(ValueError):
        BoundsConfig(1e-12, q=1.0)
    with pytest.raises(ValueError):
        BoundsConfig(0.0)
    assert math.isclose(BoundsConfig(1e-12).q, 0.5)


def test_ledger_propagates_certification_warning():
    e = catalog.PALINDROMIC
    pn = catalog.polynomial(e).monic()
    ann = choose_annulus(pn, e.rho, e.kappa)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        led = compute_ledger(pn, 5, ann, 11, BoundsConfig(1e-2, delta0_mode="self-inversive", eps_tilde_override=1e-10))
    assert not led.certified
    assert any(issubclass(w.category, CertificationWarning) for w in caught)
