"""Scalar special functions used by the Whittaker closed forms.

Complex arguments are Python ``complex`` values.  Powers and logarithms of
negative reals use the branch with argument ``+pi``, so ``(-x)**nu`` means
``x**nu * exp(i*pi*nu)`` for ``x > 0``.

Gamma, digamma, the error functions and the modified Bessel functions are
delegated to :mod:`scipy.special`.  Incomplete gamma functions of general
(possibly negative) order and complex argument, exponential integrals and
the finite sums are implemented here.
"""

from __future__ import annotations

import cmath
import math
from typing import NamedTuple

import numpy as np
from scipy import special as sc

from ._common import nonpos_int, snap_int
from .errors import DomainError, EvalOverflow, NonConvergence, PoleError

EULER_GAMMA = 0.57721566490153286060651209
_EPS = 2.220446049250313e-16
_MAX_ITER = 5000

__all__ = [
    "EULER_GAMMA",
    "gamma",
    "rgamma",
    "digamma",
    "rgamma_psi",
    "beta",
    "pochhammer",
    "harmonic",
    "exp_polynomial",
    "laguerre",
    "lower_gamma",
    "upper_gamma",
    "upper_gamma_complex",
    "upper_gamma_neg_order",
    "gen_exp_integral",
    "e1",
    "ein",
    "shi",
    "chi",
    "exp_integrals",
    "ExpIntegrals",
    "erf",
    "erfc",
    "erfi",
    "bessel_i",
    "bessel_k",
    "neg_power",
]


# ---------------------------------------------------------------------------
# gamma family


def _is_real(z) -> bool:
    return not isinstance(z, complex) or z.imag == 0.0


def gamma(z):
    """Gamma function; raises :class:`PoleError` at non-positive integers."""
    if _is_real(z):
        zr = float(complex(z).real)
        if nonpos_int(zr) is not None and zr == round(zr):
            raise PoleError(f"gamma has a pole at {zr}")
        v = float(sc.gamma(zr))
        if not math.isfinite(v):
            raise EvalOverflow(f"gamma({zr}) overflows")
        return v
    return complex(sc.gamma(complex(z)))


def rgamma(z):
    """Reciprocal gamma, entire (zero at the poles of gamma)."""
    if _is_real(z):
        return float(sc.rgamma(float(complex(z).real)))
    return complex(sc.rgamma(complex(z)))


def digamma(z):
    if _is_real(z):
        zr = float(complex(z).real)
        if zr <= 0 and zr == round(zr):
            raise PoleError(f"digamma has a pole at {zr}")
        return float(sc.psi(zr))
    return complex(sc.psi(complex(z)))


def rgamma_psi(z: float) -> float:
    """``psi(z)/Gamma(z)``, continued to the poles where it equals ``(-1)**(n+1) n!``."""
    n = nonpos_int(z)
    if n is not None and float(z) == -n:
        return float((-1) ** (n + 1) * math.factorial(n))
    return float(sc.psi(z) * sc.rgamma(z))


def beta(a: float, b: float) -> float:
    if (nonpos_int(a) is not None and a == round(a)) or (nonpos_int(b) is not None and b == round(b)):
        raise PoleError(f"beta({a}, {b}) has a pole")
    return gamma(a) * gamma(b) * rgamma(a + b)


def pochhammer(a, n: int):
    """Rising factorial ``(a)_n`` by direct product."""
    if n < 0:
        raise DomainError("pochhammer needs n >= 0")
    p = 1.0
    for j in range(n):
        p *= a + j
    return p


def harmonic(n: int) -> float:
    if n < 0:
        raise DomainError("harmonic number needs n >= 0")
    return math.fsum(1.0 / k for k in range(1, n + 1))


def exp_polynomial(n: int, x: float) -> float:
    """Truncated exponential ``sum_{k<=n} x**k / k!``."""
    if n < 0:
        raise DomainError("exp_polynomial needs n >= 0")
    terms = []
    t = 1.0
    for k in range(n + 1):
        if k:
            t *= x / k
        terms.append(t)
    return math.fsum(terms)


def laguerre(n: int, alpha: float, x: float) -> float:
    """Generalised Laguerre polynomial as a compensated finite sum.

    The coefficient ``Gamma(n+alpha+1)/Gamma(m+alpha+1)`` is formed as the
    product ``(alpha+m+1)...(alpha+n)``, so negative integer ``alpha`` is fine.
    """
    if n < 0:
        raise DomainError("laguerre needs n >= 0")
    terms = []
    for m in range(n + 1):
        c = 1.0
        for j in range(m + 1, n + 1):
            c *= alpha + j
        terms.append(c * (-x) ** m / (math.factorial(m) * math.factorial(n - m)))
    return math.fsum(terms)


def neg_power(x: float, nu: float) -> complex:
    """``(-x)**nu`` for ``x > 0`` on the ``arg = +pi`` branch; exact for integer ``nu``."""
    k = snap_int(nu, 0.0)
    if k is not None:
        return complex((-float(x)) ** k)
    mag = x**nu
    return complex(mag * math.cos(math.pi * nu), mag * math.sin(math.pi * nu))


def _cpow(z: complex, nu: float) -> complex:
    if z.imag == 0.0 and z.real < 0:
        return neg_power(-z.real, nu)
    if z.imag == 0.0 and z.real > 0:
        return complex(z.real**nu)
    return cmath.exp(nu * cmath.log(z))


def _clog(z: complex) -> complex:
    if z.imag == 0.0 and z.real < 0:
        return complex(math.log(-z.real), math.pi)
    return cmath.log(z)


# ---------------------------------------------------------------------------
# incomplete gamma


def _lower_series_neg_kernel(nu: float, z: complex) -> complex:
    """``sum_n (-z)**n / (n! (nu+n))`` with the usual three-small-terms stop."""
    s = 0.0 + 0.0j
    t = 1.0 + 0.0j  # (-z)^n / n!
    small = 0
    for n in range(_MAX_ITER):
        if n:
            t *= -z / n
        term = t / (nu + n)
        s += term
        if abs(term) <= _EPS * abs(s) * 0.5 or abs(term) < 1e-300:
            small += 1
            if small >= 3 and n > abs(z):
                return s
        else:
            small = 0
    raise NonConvergence("lower incomplete gamma series did not converge")


def _lower_gamma_pos(nu: float, x: float) -> float:
    """gamma(nu, x) for real x > 0 and nu not a non-positive integer."""
    if x > nu + 1.0 and x > 1.0 and nu > 0:
        return gamma(nu) - _upper_cf(nu, x)
    # e^{-x} x^nu sum x^n / (nu)_{n+1}: all terms positive once n > -nu
    s = 0.0
    t = 1.0 / nu
    small = 0
    for n in range(_MAX_ITER):
        if n:
            t *= x / (nu + n)
        s += t
        if abs(t) <= _EPS * abs(s) * 0.5:
            small += 1
            if small >= 3 and nu + n > x:
                return math.exp(-x) * x**nu * s
        else:
            small = 0
    raise NonConvergence("lower incomplete gamma series did not converge")


def lower_gamma(nu: float, z) -> complex:
    """Lower incomplete gamma ``gamma(nu, z)`` for real order and complex ``z``.

    Uses the branch ``z**nu`` with ``arg(-x) = +pi``.  Non-positive integer
    orders raise :class:`PoleError` (except at ``z = 0`` with ``nu > 0``).
    """
    z = complex(z)
    if nonpos_int(nu) is not None and float(nu) == round(nu):
        raise PoleError(f"lower incomplete gamma has a pole at order {nu}")
    if z == 0:
        if nu > 0:
            return 0j
        raise DomainError("lower incomplete gamma diverges at z = 0 for nu <= 0")
    if z.imag == 0.0 and z.real > 0:
        return complex(_lower_gamma_pos(nu, z.real))
    return _cpow(z, nu) * _lower_series_neg_kernel(nu, z)


def _upper_cf(nu: float, x: float) -> float:
    """Continued fraction for Gamma(nu, x), x > 0, modified Lentz."""
    tiny = 1e-300
    b = x + 1.0 - nu
    c = 1.0 / tiny
    d = 1.0 / b if b != 0 else 1.0 / tiny
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - nu)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return math.exp(-x + nu * math.log(x)) * h
    raise NonConvergence("upper incomplete gamma continued fraction did not converge")


def upper_gamma(nu: float, x: float) -> float:
    """Upper incomplete gamma ``Gamma(nu, x)`` for real ``nu`` of any sign and ``x > 0``."""
    if not x > 0:
        raise DomainError("upper_gamma needs x > 0")
    if x >= 1.0 and x > nu + 1.0:
        return _upper_cf(nu, x)
    m = nonpos_int(nu)
    if m is not None and float(nu) == -m:
        return upper_gamma_neg_order(m, x).real
    return gamma(nu) - lower_gamma(nu, x).real


def upper_gamma_neg_order(m: int, z) -> complex:
    """``Gamma(-m, z)`` through the exponential integral.

    ``Gamma(-m, z) = (-1)**m / m! * [E1(z) - exp(-z) sum_{k<m} (-1)**k k! / z**(k+1)]``.
    """
    if m < 0:
        raise DomainError("upper_gamma_neg_order needs m >= 0")
    z = complex(z)
    if z == 0:
        raise PoleError("Gamma(-m, 0) is infinite")
    tail = sum((-1) ** k * math.factorial(k) / z ** (k + 1) for k in range(m))
    return (-1) ** m / math.factorial(m) * (e1(z) - cmath.exp(-z) * tail)


def upper_gamma_complex(s: float, z) -> complex:
    """Upper incomplete gamma for real order and complex argument."""
    z = complex(z)
    if z.imag == 0.0 and z.real > 0:
        return complex(upper_gamma(s, z.real))
    m = nonpos_int(s)
    if m is not None and float(s) == -m:
        return upper_gamma_neg_order(m, z)
    return gamma(s) - lower_gamma(s, z)


def gen_exp_integral(p: float, z) -> complex:
    """Generalised exponential integral ``E_p(z) = z**(p-1) Gamma(1-p, z)``."""
    z = complex(z)
    if z == 0:
        raise DomainError("E_p(0) is not handled")
    return _cpow(z, p - 1.0) * upper_gamma_complex(1.0 - p, z)


# ---------------------------------------------------------------------------
# exponential integrals


def _ein_series(z: complex) -> complex:
    s = 0.0 + 0.0j
    t = 1.0 + 0.0j  # z^k / k!
    small = 0
    for k in range(1, _MAX_ITER):
        t *= z / k
        term = -t / k if k % 2 == 0 else t / k
        s += term
        if abs(term) <= _EPS * abs(s) * 0.5:
            small += 1
            if small >= 3 and k > abs(z):
                return s
        else:
            small = 0
    raise NonConvergence("Ein series did not converge")


def ein(z):
    """Entire exponential integral ``Ein(z) = sum (-1)**(k+1) z**k / (k k!)``."""
    if _is_real(z):
        x = float(complex(z).real)
        if x > 2.0:
            return e1(x) + math.log(x) + EULER_GAMMA
        return _ein_series(complex(x)).real
    return _ein_series(complex(z))


def e1(z):
    """Exponential integral ``E1``; for negative reals the ``arg = +pi`` branch is used."""
    if _is_real(z):
        x = float(complex(z).real)
        if x > 1.0:
            return _upper_cf(0.0, x)
        if x > 0:
            return _ein_series(complex(x)).real - math.log(x) - EULER_GAMMA
        if x == 0:
            raise DomainError("E1 has a logarithmic singularity at 0")
    z = complex(z)
    return ein(z) - _clog(z) - EULER_GAMMA


def shi(x: float) -> float:
    s = 0.0
    t = x  # x^{2k+1}/(2k+1)!
    k = 0
    while True:
        term = t / (2 * k + 1)
        s += term
        if abs(term) <= _EPS * abs(s) * 0.5 and k > abs(x):
            return s
        k += 1
        t *= x * x / ((2 * k) * (2 * k + 1))
        if k > _MAX_ITER:
            raise NonConvergence("Shi series did not converge")


def chi(x: float) -> float:
    if not x > 0:
        raise DomainError("Chi needs x > 0")
    s = 0.0
    t = 1.0
    k = 0
    while True:
        k += 1
        t *= x * x / ((2 * k - 1) * (2 * k))
        term = t / (2 * k)
        s += term
        if abs(term) <= _EPS * abs(s) * 0.5 and k > x:
            break
        if k > _MAX_ITER:
            raise NonConvergence("Chi series did not converge")
    return EULER_GAMMA + math.log(x) + s


class ExpIntegrals(NamedTuple):
    E1: float
    Ein: float
    Shi: float
    Chi: float


def exp_integrals(x: float) -> ExpIntegrals:
    if not x > 0:
        raise DomainError("exp_integrals needs x > 0")
    return ExpIntegrals(e1(x), ein(x), shi(x), chi(x))


# ---------------------------------------------------------------------------
# error functions and Bessel functions (scipy-backed)


def erf(x: float) -> float:
    return float(sc.erf(x))


def erfc(x: float) -> float:
    return float(sc.erfc(x))


def erfi(x: float) -> float:
    return float(sc.erfi(x))


def bessel_i(nu: float, x: float) -> float:
    if x < 0:
        raise DomainError("bessel_i is only provided for x >= 0")
    v = float(sc.iv(nu, x))
    if not np.isfinite(v):
        raise EvalOverflow(f"I_{nu}({x}) overflows")
    return v


def bessel_k(nu: float, x: float) -> float:
    if not x > 0:
        raise DomainError("bessel_k needs x > 0")
    v = float(sc.kv(nu, x))
    if not np.isfinite(v):
        raise EvalOverflow(f"K_{nu}({x}) overflows")
    return v
