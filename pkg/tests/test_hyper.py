import math

import pytest

from wderiv import hyper
from wderiv._common import SeriesControl
from wderiv.errors import DomainError, NonConvergence
from wderiv.oracle import fd_param_derivative
from conftest import golden, num, rel


def test_two_f_two_reference_value():
    r = hyper.pfq([1, 1], [2, 2], 1.0)
    assert math.isclose(r.value, 1.3179021514544038, rel_tol=1e-15)


def test_pfq_rejects_nonpositive_integer_lower():
    with pytest.raises(DomainError):
        hyper.pfq([1], [-2], 0.5)


def test_pfq_term_cap_raises():
    with pytest.raises(NonConvergence):
        hyper.pfq([1], [1], 30.0, SeriesControl(max_terms=5))


@pytest.mark.parametrize("e", [e for e in golden("special.json") if e["fn"] == "1F1"], ids=lambda e: f"{e['a']},{e['b']},{e['x']}")
def test_hyp1f1_golden(e):
    v = hyper.hyp1f1(num(e["a"]), num(e["b"]), num(e["x"]))
    assert rel(v, num(e["value"])) < 1e-13


@pytest.mark.parametrize("e", [e for e in golden("special.json") if e["fn"] == "U"], ids=lambda e: f"{e['a']},{e['b']},{e['x']}")
def test_tricomi_u_golden(e):
    v = hyper.tricomi_u(num(e["a"]), num(e["b"]), num(e["x"])).value
    assert rel(v, num(e["value"])) < 1e-10


@pytest.mark.parametrize("e", [e for e in golden("special.json") if e["fn"].startswith("2F2")], ids=lambda e: f"{e['b']},{e['x']}")
def test_two_f_two_golden(e):
    v = hyper.pfq([1, 1], [num(e["b"]), 2], num(e["x"])).value
    assert rel(v, num(e["value"])) < 1e-13


def test_u_kummer_reflection():
    a, b, x = 0.7, 1.4, 2.3
    lhs = hyper.tricomi_u(a, b, x).value
    rhs = x ** (1 - b) * hyper.tricomi_u(a - b + 1, 2 - b, x).value
    assert rel(lhs, rhs) < 1e-12


def test_u_at_nonpositive_integer_a_is_polynomial():
    # U(-1, b, x) = x - b
    assert math.isclose(hyper.tricomi_u(-1.0, 0.4, 2.5).value, 2.1, rel_tol=1e-13)


@pytest.mark.parametrize("a,b", [(0.5, 1.0), (1.5, 2.5), (3.5, 3.5), (2.0, 0.7)])
@pytest.mark.parametrize("x", [-2.0, 0.5, 2.0])
def test_g1_transform(a, b, x):
    assert hyper.g1_transform_check(a, b, x) < 1e-10


@pytest.mark.parametrize("m", range(0, 9))
@pytest.mark.parametrize("x", [-2.0, 0.5, 3.0])
def test_reduce_2f2_m(m, x):
    direct = hyper.pfq([1, 1], [m + 2, 2], x).value
    assert rel(hyper.reduce_2f2_m(m, x), direct) < 1e-12


@pytest.mark.parametrize("a,b,x", [(0.6, 1.3, 1.5), (1.2, 0.45, 3.0), (-0.4, 0.8, 2.0), (0.9, 2.0, 1.0)])
def test_u_parameter_derivatives_match_fd(a, b, x):
    d = hyper.u_param_derivs(a, b, x)
    fa = fd_param_derivative(lambda t: hyper.tricomi_u(t, b, x).value, a).value
    fb = fd_param_derivative(lambda t: hyper.tricomi_u(a, t, x).value, b).value
    assert abs(d.dU_da - fa) <= 1e-7 * max(1.0, abs(fa))
    assert abs(d.dU_db - fb) <= 1e-7 * max(1.0, abs(fb))


def test_max_terms_from_environment(monkeypatch):
    monkeypatch.setenv("WDERIV_MAX_TERMS", "7")
    assert SeriesControl().max_terms == 7
    monkeypatch.setenv("WDERIV_MAX_TERMS", "junk")
    assert SeriesControl().max_terms == 10_000
