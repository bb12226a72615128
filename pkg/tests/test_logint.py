import math

import numpy as np
import pytest

from wderiv import logint as li
from wderiv import special as sp
from wderiv.errors import DivergentIntegral, DomainError
from wderiv.whittaker import whittaker_w
from wderiv import derivs
from conftest import golden, num, rel

EULER = 0.5772156649015329


def close(a, b, tol):
    return abs(a - b) <= tol * max(1.0, abs(b))


def test_quad_I_elementary():
    assert close(li.quad_I(li.SingularitySpec(), lambda t: np.exp(-t)).value, 1.0, 1e-12)
    assert close(li.quad_I(li.SingularitySpec(0.0, True), lambda t: np.exp(-t) * np.log(t)).value, -EULER, 1e-12)
    v = li.quad_I(li.SingularitySpec(-0.5), lambda t: np.exp(-2 * t) / np.sqrt(t)).value
    assert close(v, math.sqrt(math.pi / 2), 1e-12)


def test_singularity_spec_rejects_nonintegrable():
    with pytest.raises(DivergentIntegral):
        li.SingularitySpec(-1.0)


@pytest.mark.parametrize("e", golden("log_laplace.json"), ids=lambda e: f"{e['nu']},{e['x']}")
@pytest.mark.parametrize("sign", ["plus", "minus"])
def test_log_laplace_golden(e, sign):
    v = li.log_laplace_I(+1 if sign == "plus" else -1, num(e["nu"]), num(e["x"])).value
    assert close(v, num(e[sign]), 1e-10)


def test_log_laplace_difference_identity():
    x = 2.0
    diff = li.log_laplace_I(+1, 0.0, x).value - li.log_laplace_I(-1, 0.0, x).value
    assert close(diff, 2 * (-EULER - math.log(x)) / x, 1e-12)


def test_log_laplace_routes():
    for nu, x in ((0.0, 1.0), (1.5, 1.0)):
        assert close(li.log_laplace_I(-1, nu, x).value, li.log_laplace_I(-1, nu, x, route="quadrature").value, 1e-9)


@pytest.mark.parametrize("e", golden("log_integrals.json"), ids=lambda e: f"{e['kappa']},{e['mu']},{e['x']}")
def test_star_integrals_golden(e):
    k, m, x = num(e["kappa"]), num(e["mu"]), num(e["x"])
    assert close(li.I1_star(k, m, x).value, num(e["I1_star"]), 1e-9)
    assert close(li.I3_star(k, m, x).value, num(e["I3_star"]), 1e-9)


def test_reductions_to_log_laplace():
    assert close(li.I1_star(0.5 - 0.8, 0.8, 1.0).value, li.log_laplace_I(-1, 0.6, 1.0).value, 1e-10)
    assert close(li.I3_star(0.5 - 0.7, 0.7, 1.0).value, li.log_laplace_I(+1, 0.4, 1.0).value, 1e-10)


def test_interrelations():
    k, m, x = 0.2, 0.6, 1.5
    assert close(li.I2_star(k, m, x).value, math.exp(-x) * li.I1_star(k, m, x).value, 1e-12)
    assert close(li.I4_star(k, m, x).value, math.exp(-x) * li.I3_star(k, m, x).value, 1e-12)
    assert close(li.I2_star(k, m, x, route="quadrature").value, li.I2_star(k, m, x).value, 1e-8)
    assert close(li.I4_star(k, m, x, route="quadrature").value, li.I4_star(k, m, x).value, 1e-8)


def test_star_domain():
    with pytest.raises(DomainError):
        li.I1_star(1.0, 0.2, 1.0)


def test_families_match_quadrature():
    assert close(li.I1_star_n_family(2, 1.0).value, li.I1_star(1.0, 1.5, 1.0, route="quadrature").value, 1e-9)
    assert close(li.I1_star_n_family(0, 1.0).value, li.I1_star(0.0, 0.5, 1.0, route="quadrature").value, 1e-9)
    assert close(li.I1_star_zero_halfint(1, 2.0).value, li.I1_star(0.0, 1.5, 2.0, route="quadrature").value, 1e-9)
    assert close(li.I3_star_n_family(1, 2.0).value, li.I3_star(0.5, 1.0, 2.0, route="quadrature").value, 1e-9)


def test_binomial_rearrangement():
    n, x = 3, 1.0
    s = sum(math.comb(n, k) * li.log_laplace_I(-1, k, x).value for k in range(n + 1))
    assert close(s, li.I1_star_n_family(n, x).value, 1e-10)


def test_sum_gamma_identity():
    for n in range(9):
        for x in (0.5, 2.0):
            lhs = math.fsum(x**-k / math.factorial(n - k) for k in range(n + 1))
            rhs = x**-n * math.exp(x) * sp.upper_gamma(1 + n, x) / math.factorial(n)
            assert rel(lhs, rhs) < 1e-13


@pytest.mark.parametrize("k,m,x", [(-0.5, 0.2, 1.0), (0.0, 0.15, 2.0)])
def test_h_routes(k, m, x):
    assert close(li.H_bessel(k, m, x).value, li.H_bessel(k, m, x, route="via_i1").value, 1e-7)


def test_h_domain():
    with pytest.raises(DomainError):
        li.H_bessel(0.4, 0.3, 1.0)


@pytest.mark.parametrize("k,m,x", [(-0.5, 0.2, 1.0), (0.1, 0.3, 4.0)])
def test_bessel_rep(k, m, x):
    assert close(li.bessel_rep_W(k, m, x).value, whittaker_w(k, m, x).value, 1e-8)


def test_bessel_rep_table5_row():
    x = 2.0
    assert close(li.bessel_rep_W(0, 0, x).value, math.sqrt(x / math.pi) * sp.bessel_k(0, x / 2), 1e-8)


def test_dkappa_from_i1_matches_series():
    a = derivs.dW(-0.3, 0.1, 1.0, "kappa", "integral_rep").value
    b = derivs.dW(-0.3, 0.1, 1.0, "kappa", "series").value
    assert close(a, b, 1e-8)
