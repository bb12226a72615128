import math

import pytest

from wderiv import special as sp
from wderiv.whittaker import (TABLE5_ROWS, table5_lookup, w_laguerre_family, w_upper_gamma_family,
                              whittaker_m, whittaker_w, wi_lower, wi_upper, wi_upper_integral_rep)
from wderiv.errors import DomainError
from conftest import golden, num, rel

E = math.e


@pytest.mark.parametrize("e", golden("whittaker_w.json"), ids=lambda e: f"{e['kappa']},{e['mu']},{e['x']}")
def test_w_against_golden(e):
    ref = num(e["W"])
    v = whittaker_w(num(e["kappa"]), num(e["mu"]), num(e["x"])).value
    assert abs(v - ref) <= 1e-9 * max(abs(ref), 1e-300)


@pytest.mark.parametrize("e", golden("whittaker_m.json"), ids=lambda e: f"{e['kappa']},{e['mu']},{e['x']}")
def test_m_against_golden(e):
    assert rel(whittaker_m(num(e["kappa"]), num(e["mu"]), num(e["x"])).value, num(e["M"])) < 1e-12


def test_m_on_kappa_mu_plus_half_line():
    mu, x = 0.3, 2.0
    assert rel(whittaker_m(mu + 0.5, mu, x).value, math.exp(-x / 2) * x ** (0.5 + mu)) < 1e-14


def test_m_reflected_line_uses_lower_gamma():
    mu, x = 0.2, 1.0
    z = -2 * mu * math.exp(-x / 2) * x ** (0.5 - mu) * sp.neg_power(x, 2 * mu) * sp.lower_gamma(-2 * mu, -x)
    assert abs(z.imag) < 1e-12
    assert rel(whittaker_m(mu + 0.5, -mu, x).value, z.real) < 1e-12


def test_m_small_x_leading_term():
    mu, x = 0.4, 1e-8
    assert abs(whittaker_m(0.3, mu, x).value / x ** (mu + 0.5) - 1) < 1e-7


def test_w_elementary_examples():
    assert rel(whittaker_w(0, 0.5, 2.0).value, math.exp(-1)) < 1e-14
    k1 = sp.bessel_k(1, 1.5)
    assert rel(whittaker_w(0, 1, 3.0).value, math.sqrt(3 / math.pi) * k1) < 1e-12
    assert rel(whittaker_w(0.5 - 0.75, 0.75, 1.5).value, math.exp(-0.75) * 1.5 ** (-0.25)) < 1e-12


def test_w_even_in_mu():
    assert whittaker_w(0.3, -0.7, 2.0).value == whittaker_w(0.3, 0.7, 2.0).value


@pytest.mark.parametrize("method", ["combination", "tricomi", "quadrature"])
def test_w_methods_agree(method):
    ref = whittaker_w(0.6, 0.4, 2.0).value
    assert rel(whittaker_w(0.6, 0.4, 2.0, method=method).value, ref) < 1e-8


def test_w_rejects_nonpositive_x():
    with pytest.raises(DomainError):
        whittaker_w(0.1, 0.2, -1.0)


def test_table5_examples():
    assert rel(table5_lookup(-0.5, 1, 2.0).value, 2 ** -0.5 * math.exp(-1)) < 1e-14
    assert rel(table5_lookup(0.5, 1, 2.0).value, 3 * 2 ** -0.5 * math.exp(-1)) < 1e-14
    assert table5_lookup(0.123, 0.456, 1.0) is None


@pytest.mark.parametrize("row", TABLE5_ROWS, ids=lambda r: f"{r[0]},{r[1]}")
def test_table5_rows_match_quadrature(row):
    k, m, _, fn = row
    ref = whittaker_w(float(k), float(m), 2.0, method="quadrature").value
    assert rel(fn(2.0), ref) < 1e-8


def test_laguerre_family():
    assert rel(w_laguerre_family(1, 0, 2.0).value, math.exp(-1) * 2) < 1e-14
    # W_{2,1/2}(1) = 2 e^{-1/2} L_2^{(-1)}(1), with L_2^{(-1)}(x) = x^2/2 - x
    assert rel(w_laguerre_family(0, 2, 1.0).value, 2 * math.exp(-0.5) * (-0.5)) < 1e-14
    assert rel(w_laguerre_family(0.3, 2, 1.7).value, whittaker_w(2.3, -0.2, 1.7, method="quadrature").value) < 1e-8


def test_upper_gamma_family():
    assert rel(w_upper_gamma_family(0, 1.0).value, math.exp(-0.5)) < 1e-14
    assert rel(w_upper_gamma_family(2, 2.0).value, 0.5 * E * sp.upper_gamma(3, 2.0)) < 1e-14
    assert rel(w_upper_gamma_family(2, 2.0).value, whittaker_w(1, 1.5, 2.0, method="quadrature").value) < 1e-8


def test_wi_lower_closed_form():
    k, x = 1.2, 2.0
    assert rel(wi_lower(k, k - 0.5, x).value, 2**k * sp.lower_gamma(k, x / 2).real) < 1e-12


def test_wi_upper_zero_halfint():
    n, x = 1, 2.0
    ref = sum(math.factorial(n + k) * 2.0**-k * sp.upper_gamma_neg_order(k, x / 2).real
              / (math.factorial(k) * math.factorial(n - k)) for k in range(n + 1))
    assert rel(wi_upper(0, 1.5, x).value, ref) < 1e-12


@pytest.mark.parametrize("e", golden("wi.json"), ids=lambda e: f"{e['kappa']},{e['mu']},{e['x']}")
def test_wi_upper_golden(e):
    assert rel(wi_upper(num(e["kappa"]), num(e["mu"]), num(e["x"])).value, num(e["wi"])) < 1e-8


@pytest.mark.parametrize("k,m,x", [(0, 1.5, 2.0), (0.3, 0.4, 1.0), (1.2, 0.7, 2.0)])
def test_wi_integral_rep(k, m, x):
    assert rel(wi_upper_integral_rep(k, m, x).value, wi_upper(k, m, x).value) < 1e-7
