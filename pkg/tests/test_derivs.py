import math

import pytest

from wderiv import derivs as d
from wderiv import special as sp
from wderiv._common import CaseKey, QuadratureControl, WhittakerPoint
from wderiv.errors import DomainError
from wderiv.oracle import fd_param_derivative
from wderiv.whittaker import whittaker_w
from conftest import golden, num, rel

_TIGHT = QuadratureControl(target_tol=1e-13)


def fd(kappa, mu, x, wrt):
    def w(k, m):
        return whittaker_w(k, m, x, qctl=_TIGHT).value
    if wrt == "kappa":
        return fd_param_derivative(lambda t: w(t, mu), kappa).value
    return fd_param_derivative(lambda t: w(kappa, t), mu).value


def close(a, b, tol):
    return abs(a - b) <= tol * max(1.0, abs(b))


@pytest.mark.parametrize("e", golden("derivatives.json"), ids=lambda e: f"{e['kappa']},{e['mu']},{e['x']}")
@pytest.mark.parametrize("wrt", ["kappa", "mu"])
def test_dW_against_golden(e, wrt):
    ref = num(e["dW_dkappa" if wrt == "kappa" else "dW_dmu"])
    v = d.dW(num(e["kappa"]), num(e["mu"]), num(e["x"]), wrt).value
    assert close(v, ref, 1e-8)


def test_series_matches_fd():
    assert close(d.dW_dkappa_series(0.1, 0.3, 1.0).value, fd(0.1, 0.3, 1.0, "kappa"), 1e-7)


def test_series_even_in_mu():
    assert close(d.dW_dkappa_series(0.1, -0.3, 1.0).value, d.dW_dkappa_series(0.1, 0.3, 1.0).value, 1e-13)


def test_series_matches_integral_route():
    a = d.dW(0.6, 0.25, 2.0, "kappa", "series").value
    b = d.dW(0.6, 0.25, 2.0, "kappa", "integral_rep").value
    assert close(a, b, 1e-8)


def test_mu_plus_half_quarter():
    # mu = -1/4 puts kappa = mu + 1/2 at 1/4, where the value is the erfi expression
    x = 1.0
    f22 = d.hyper.pfq([1, 1], [1.5, 2], x).value
    ref = -x**0.25 * math.exp(-x / 2) * (2 * x * f22 - math.pi * sp.erfi(1.0) + 0.5772156649015329 + math.log(4))
    assert close(d.dW_dkappa_mu_plus_half(-0.25, x).value, ref, 1e-12)
    assert close(d.dW_dkappa_mu_plus_half(0.25, x).value, fd(0.75, 0.25, x, "kappa"), 1e-7)
    assert close(d.dW_dkappa_mu_plus_half(0.3, 2.0).value, fd(0.8, 0.3, 2.0, "kappa"), 1e-7)


def test_mu_plus_half_sum_rule():
    mu, x = 0.3, 2.0
    s = d.dW_dkappa_mu_plus_half(mu, x).value + d.dW_dmu_mu_plus_half(mu, x).value
    assert close(s, math.exp(-x / 2) * x ** (0.5 + mu) * math.log(x), 1e-12)
    assert close(d.dW_dmu_mu_plus_half(0.2, 3.0).value, fd(0.7, 0.2, 3.0, "mu"), 1e-7)


def test_n_mu_half_low_orders():
    x = 2.0
    assert close(d.dW_dkappa_n_mu_half(1, x).value, math.exp(-x / 2) * (x * math.log(x) - 1), 1e-14)
    for xx in (0.7, 2.0, 5.0):
        ref2 = math.exp(-xx / 2) * (xx * (xx - 2) * math.log(xx) - 3 * xx + 1)
        assert close(d.dW_dkappa_n_mu_half(2, xx).value, ref2, 1e-13)
    assert close(d.dW_dkappa_n_mu_half(3, 1.5).value, fd(3, 0.5, 1.5, "kappa"), 1e-7)


def test_half_minus_mu():
    x = 1.0
    f22 = d.hyper.pfq([1, 1], [1.5, 2], x).value
    ref = x**0.25 * math.exp(-x / 2) * (math.pi * sp.erfi(1.0) - 2 * x * f22 - 0.5772156649015329 - math.log(4))
    assert close(d.dW_dkappa_half_minus_mu(0.25, x).value, ref, 1e-12)
    assert close(d.dW_dkappa_half_minus_mu(0.35, 1.0).value, fd(0.15, 0.35, 1.0, "kappa"), 1e-7)
    assert close(d.dW_dmu_series(0.2, 0.3, 2.0).value, d.dW_dmu_half_minus_mu(0.3, 2.0).value, 1e-8)


def test_half_minus_mu_excluded_values():
    with pytest.raises(DomainError):
        d.dW_dkappa_half_minus_mu(-1.0, 1.0)


def test_integer_family():
    x = 4.0
    assert close(d.dW_dkappa_integer_family(0, x).value, math.exp(-2) * 2 * math.log(4), 1e-14)
    for m in range(7):
        a = d.dW_dkappa_integer_family(m, 2.0, "limit").value
        b = d.dW_dkappa_integer_family(m, 2.0, "finite").value
        assert close(a, b, 1e-12)
    assert close(d.dW_dkappa_integer_family(3, 1.5).value, fd(2, 1.5, 1.5, "kappa"), 1e-7)


def test_n_half_family():
    x = 1.0
    ref = math.exp(-x / 2) * (math.log(x) + math.exp(x) * sp.e1(x))
    assert close(d.dW_dkappa_n_half_family(0, x).value, ref, 1e-13)
    x = 2.0
    ref1 = x**-0.5 * math.exp(-x / 2) * ((x + 1) * math.log(x) + math.exp(x) * sp.e1(x))
    assert close(d.dW_dkappa_n_half_family(1, x).value, ref1, 1e-6)
    assert close(d.dW_dkappa_n_half_family(2, 1.0).value, fd(1, 1.5, 1.0, "kappa"), 1e-7)


def test_zero_halfint_family():
    x = 2.0
    r = sp.exp_integrals(x)
    ref = (math.exp(-x / 2) / x) * ((x - 2) * math.exp(x) * (r.Chi - r.Shi) + (x + 2) * math.log(x) + 2)
    assert close(d.dW_dkappa_zero_halfint(1, x).value, ref, 1e-12)
    assert close(d.dW_dkappa_zero_halfint(0, 1.3).value, fd(0, 0.5, 1.3, "kappa"), 1e-7)
    assert close(d.dW_dkappa_zero_halfint(2, 1.0).value, fd(0, 2.5, 1.0, "kappa"), 1e-7)


def test_dmu_series_antisymmetric():
    a = d.dW_dmu_series(0.2, 0.4, 1.0).value
    b = d.dW_dmu_series(0.2, -0.4, 1.0).value
    assert close(a, -b, 1e-13)
    assert close(d.dW_dmu_series(0.1, 0.3, 1.0).value, fd(0.1, 0.3, 1.0, "mu"), 1e-7)


def test_dmu_closed_form_families():
    x = 2.0
    assert close(d.dW_dmu_integer_family(1, x).value, math.exp(-x / 2), 1e-12)
    r1 = sp.exp_integrals(1.0)
    assert close(d.dW_dmu_zero_halfint(0, 1.0).value, math.exp(0.5) * (r1.Shi - r1.Chi), 1e-12)
    r2 = sp.exp_integrals(x)
    ref = x**-0.5 * math.exp(-x / 2) * (math.exp(x) * (r2.Shi - r2.Chi) + 2)
    assert close(d.dW_dmu_n_half_family(1, x).value, ref, 1e-12)
    assert close(d.dW_dmu_n_half_family(1, x, sign=-1).value, -ref, 1e-12)


def test_dK_dnu():
    for e in (e for e in golden("special.json") if e["fn"] == "dK/dnu"):
        assert close(d.dK_dnu(num(e["nu"]), num(e["x"])).value, num(e["value"]), 1e-9)
    v = fd_param_derivative(lambda t: sp.bessel_k(t, 1.0), 0.0).value
    assert abs(v) < 1e-9
    x, mu = 2.0, 0.25
    via_k = math.sqrt(x / math.pi) * d.dK_dnu(mu, x / 2).value
    assert close(via_k, fd(0, mu, x, "mu"), 1e-7)


def test_auto_dispatch():
    r = d.dW_auto(d.DerivRequest(WhittakerPoint(1, 0.5, 2.0)))
    # (1, 1/2) lies on two closed-form families; both give the same value
    assert r.case_used in (CaseKey.KAPPA_N_MU_HALF, CaseKey.INTEGER_LIMIT)
    assert close(r.value, math.exp(-1) * (2 * math.log(2) - 1), 1e-14)
    r = d.dW_auto(d.DerivRequest(WhittakerPoint(0.1, 0.3, 1.0), wrt=d.Wrt.MU))
    assert r.case_used is CaseKey.GENERIC_SERIES
    assert close(r.value, fd(0.1, 0.3, 1.0, "mu"), 1e-7)


def test_request_rejects_nonpositive_x():
    with pytest.raises(DomainError):
        d.DerivRequest(WhittakerPoint(0.1, 0.3, 0.0))


@pytest.mark.parametrize("route", ["series", "integral_rep", "finite_difference"])
def test_routes_agree_at_generic_point(route):
    ref = d.dW(0.1, 0.3, 2.0, "kappa").value
    assert close(d.dW(0.1, 0.3, 2.0, "kappa", route).value, ref, 1e-7)
