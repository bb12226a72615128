import math

import pytest

from wderiv import oracle
from wderiv.derivs import dW_dkappa_series
from wderiv.errors import EvalFailure
from wderiv.hyper import pfq
from wderiv.special import ein
from wderiv.whittaker import whittaker_w


def test_fd_square_and_exp():
    assert abs(oracle.fd_param_derivative(lambda t: t * t, 3.0).value - 6) < 1e-9
    assert abs(oracle.fd_param_derivative(math.exp, 0.0).value - 1) < 1e-9


@pytest.mark.parametrize("stencil", list(oracle.Stencil))
def test_fd_exact_on_cubics(stencil):
    spec = oracle.FDSpec(stencil=stencil)
    v = oracle.fd_param_derivative(lambda t: 2 * t**3 - t**2 + 4 * t - 1, 0.7, spec).value
    assert abs(v - (6 * 0.49 - 1.4 + 4)) < 1e-8


def test_fd_matches_series():
    v = oracle.fd_param_derivative(lambda k: whittaker_w(k, 0.3, 1.0).value, 0.1).value
    assert abs(v - dW_dkappa_series(0.1, 0.3, 1.0).value) < 1e-7


def test_fd_wraps_errors():
    def bad(t):
        raise ZeroDivisionError
    with pytest.raises(EvalFailure):
        oracle.fd_param_derivative(bad, 1.0)


def test_brute_series():
    assert abs(oracle.brute_series(lambda n: 1 / math.factorial(n)).value - math.e) < 1e-15
    assert abs(oracle.brute_pfq([1, 1], [2, 2], -1.0).value - ein(1.0)) < 1e-15


@pytest.mark.parametrize("up,lo,z", [([0.5], [1.5], 2.0), ([1, 1], [2, 2], 1.0), ([0.7], [0.7], 2.0),
                                     ([1, 1], [1.5, 2], 3.0), ([1, 1], [4, 2], -2.0)])
def test_brute_agrees_with_engine(up, lo, z):
    a = oracle.brute_pfq(up, lo, z).value
    b = pfq(up, lo, z).value
    assert abs(a - b) <= 1e-12 * abs(b)


def test_compare():
    assert oracle.compare(1.0, 1.0 + 1e-14, 1e-12).passed
    assert not oracle.compare(1.0, 1.1, 1e-3).passed
    assert not oracle.compare(float("nan"), 1.0, 1e-3).passed


def test_sweep_symmetry():
    grid = [(k, m, x) for k in (0.1, -0.4) for m in (0.2, 0.7) for x in (0.5, 1.0, 3.0)][:10]
    grid += [(0.3, 0.45, 2.0)] * (10 - len(grid))
    reps = oracle.sweep(grid, (lambda k, m, x: whittaker_w(k, m, x).value,
                               lambda k, m, x: whittaker_w(k, -m, x).value), 1e-12)
    assert len(reps) == 10 and all(r.passed for r in reps)


def test_sweep_turns_errors_into_failures():
    reps = oracle.sweep([(1.0,)], (lambda x: x, lambda x: 1 / 0), 1e-12)
    assert not reps[0].passed
