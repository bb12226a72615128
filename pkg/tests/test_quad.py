import math

import numpy as np
import pytest

from wderiv import quad
from wderiv._common import QuadratureControl
from wderiv.errors import QuadratureFailure


def test_half_line_exponential():
    assert abs(quad.half_line(lambda t: np.exp(-t)).value - 1) < 1e-12


def test_half_line_log_singularity():
    r = quad.half_line(lambda t: np.exp(-t) * np.log(t))
    assert abs(r.value + 0.5772156649015329) < 1e-12


def test_finite_and_tail_split():
    f = lambda t: np.exp(-t) * t**0.3
    a = quad.finite(f, 0.0, 1.7).value + quad.tail(f, 1.7).value
    assert abs(a - math.gamma(1.3)) < 1e-12


def test_error_estimate_is_reported():
    r = quad.half_line(lambda t: np.exp(-3 * t) / np.sqrt(t), left_exponent=-0.5)
    assert abs(r.value - math.sqrt(math.pi / 3)) < 1e-12
    assert r.abs_err < 1e-9


def test_failure_when_levels_exhausted():
    with pytest.raises(QuadratureFailure):
        quad.half_line(lambda t: np.sin(50 * t) * np.exp(-t * 1e-3), QuadratureControl(target_tol=1e-15, max_level=3))
