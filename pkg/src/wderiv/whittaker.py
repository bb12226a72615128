"""Whittaker functions M and W and the integral Whittaker functions Wi and wi.

``W`` is even in ``mu``, so every route works with ``|mu|``.  The automatic
dispatch tries, in order: the explicit elementary/Bessel table, the
Laguerre-type reductions, ``kappa = 0`` (a Macdonald function), the two-M
combination when ``2 mu`` is safely non-integer and the combination does not
cancel badly, and finally the Laplace-integral quadrature, which is valid for
every ``(kappa, mu)``.
"""

from __future__ import annotations

import math
from enum import Enum
from fractions import Fraction
from typing import Callable

import numpy as np
from scipy import special as sc

from . import hyper
from . import quad
from . import special as sp
from ._common import EvalResult, QuadratureControl, SeriesControl, snap_int, snap_rational
from .errors import DivergentIntegral, DomainError, PoleError

__all__ = [
    "WFamily",
    "classify",
    "whittaker_m",
    "whittaker_w",
    "table5_lookup",
    "TABLE5_ROWS",
    "w_laguerre_family",
    "w_upper_gamma_family",
    "laguerre_base",
    "wi_lower",
    "wi_upper",
    "wi_upper_integral_rep",
    "dwi_dkappa_integral_rep",
    "w_array",
]

_SCTL = SeriesControl()
_QCTL = QuadratureControl()
_NEAR_INT_2MU = 1e-4
_COMBINATION_MAX_LOSS = 1e2


class WFamily(str, Enum):
    GENERIC = "generic"
    MU_HALF_INTEGER = "2mu-integer"
    KAPPA_MU_PLUS_HALF = "kappa=mu+1/2"
    KAPPA_HALF_MINUS_MU = "kappa=1/2-mu"
    KAPPA0 = "kappa=0"
    TABLE5_ROW = "table5"
    LAGUERRE = "laguerre"
    UPPER_GAMMA = "upper-gamma"


def _check_x(x: float) -> None:
    if not (x > 0 and math.isfinite(x)):
        raise DomainError("Whittaker functions are evaluated for finite x > 0")


# ---------------------------------------------------------------------------
# explicit table

def _k(nu: float, x: float) -> float:
    return float(sc.kv(nu, x / 2.0))


_SQPI = math.sqrt(math.pi)

TABLE5_ROWS: list[tuple[Fraction, Fraction, str, Callable[[float], float]]] = [
    (Fraction(-1, 4), Fraction(1, 4), "sqrt(pi) e^(x/2) x^(1/4) erfc(sqrt x)",
     lambda x: _SQPI * x**0.25 * float(sc.erfcx(math.sqrt(x))) * math.exp(-x / 2)),
    (Fraction(-1, 2), Fraction(1, 2), "x/sqrt(pi) [K1(x/2) - K0(x/2)]",
     lambda x: x / _SQPI * (_k(1, x) - _k(0, x))),
    (Fraction(-1, 2), Fraction(1, 6), "3x/sqrt(pi) [K_{2/3}(x/2) - K_{1/3}(x/2)]",
     lambda x: 3 * x / _SQPI * (_k(2 / 3, x) - _k(1 / 3, x))),
    (Fraction(-1, 2), Fraction(1), "x^(-1/2) e^(-x/2)", lambda x: x**-0.5 * math.exp(-x / 2)),
    (Fraction(0), Fraction(0), "sqrt(x/pi) K0(x/2)", lambda x: math.sqrt(x / math.pi) * _k(0, x)),
    (Fraction(0), Fraction(1, 2), "e^(-x/2)", lambda x: math.exp(-x / 2)),
    (Fraction(0), Fraction(1), "sqrt(x/pi) K1(x/2)", lambda x: math.sqrt(x / math.pi) * _k(1, x)),
    (Fraction(0), Fraction(3, 2), "x^-1 e^(-x/2) (x+2)", lambda x: math.exp(-x / 2) * (x + 2) / x),
    (Fraction(0), Fraction(5, 2), "x^-2 e^(-x/2) (x^2+6x+12)",
     lambda x: math.exp(-x / 2) * (x * x + 6 * x + 12) / x**2),
    (Fraction(1, 4), Fraction(1, 4), "x^(1/4) e^(-x/2)", lambda x: x**0.25 * math.exp(-x / 2)),
    (Fraction(1, 2), Fraction(1, 6), "x/(2 sqrt(pi)) [K_{1/3}(x/2) + K_{2/3}(x/2)]",
     lambda x: x / (2 * _SQPI) * (_k(1 / 3, x) + _k(2 / 3, x))),
    (Fraction(1, 2), Fraction(1, 4), "x/(2 sqrt(pi)) [K_{1/4}(x/2) + K_{3/4}(x/2)]",
     lambda x: x / (2 * _SQPI) * (_k(0.25, x) + _k(0.75, x))),
    (Fraction(1, 2), Fraction(1, 2), "x/(2 sqrt(pi)) [K0(x/2) + K1(x/2)]",
     lambda x: x / (2 * _SQPI) * (_k(0, x) + _k(1, x))),
    (Fraction(1, 2), Fraction(1), "x^(-1/2) e^(-x/2) (x+1)", lambda x: x**-0.5 * math.exp(-x / 2) * (x + 1)),
    (Fraction(1, 2), Fraction(2), "x^(-3/2) e^(-x/2) (x^2+4x+6)",
     lambda x: x**-1.5 * math.exp(-x / 2) * (x * x + 4 * x + 6)),
    (Fraction(1), Fraction(3, 2), "x^-1 e^(-x/2) (x^2+2x+2)",
     lambda x: math.exp(-x / 2) * (x * x + 2 * x + 2) / x),
    (Fraction(1), Fraction(1), "1/2 sqrt(x/pi) [x K0(x/2) + (x+1) K1(x/2)]",
     lambda x: 0.5 * math.sqrt(x / math.pi) * (x * _k(0, x) + (x + 1) * _k(1, x))),
    (Fraction(1), Fraction(2), "1/(2 sqrt(pi x)) [x(x+3) K0(x/2) + (x^2+4x+12) K1(x/2)]",
     lambda x: (x * (x + 3) * _k(0, x) + (x * x + 4 * x + 12) * _k(1, x)) / (2 * math.sqrt(math.pi * x))),
    (Fraction(2), Fraction(2), "1/(4 sqrt(pi x)) [x(2x^2+2x+3) K0(x/2) + 2(x^3+2x^2+4x+6) K1(x/2)]",
     lambda x: (x * (2 * x * x + 2 * x + 3) * _k(0, x) + 2 * (x**3 + 2 * x * x + 4 * x + 6) * _k(1, x))
     / (4 * math.sqrt(math.pi * x))),
]

_TABLE5_INDEX = {(k, m): (text, fn) for k, m, text, fn in TABLE5_ROWS}


def table5_lookup(kappa: float, mu: float, x: float) -> EvalResult | None:
    """Explicit elementary or Bessel expression when ``(kappa, |mu|)`` is a tabulated pair."""
    k = snap_rational(kappa)
    m = snap_rational(abs(mu))
    if k is None or m is None:
        return None
    row = _TABLE5_INDEX.get((k, m))
    if row is None:
        return None
    _check_x(x)
    v = row[1](x)
    return EvalResult(v, 8 * sp._EPS * abs(v), "table5", (row[0],))


# ---------------------------------------------------------------------------
# reduction families


def laguerre_base(kappa: float, mu: float) -> tuple[float, int] | None:
    """Return ``(k, n)`` with ``(kappa, mu) = (k + n, +-(k - 1/2))``, or None."""
    for s in (1.0, -1.0):
        base = 0.5 + s * abs(mu)
        n = snap_int(kappa - base)
        if n is not None and n >= 0:
            return base, n
    return None


def w_laguerre_family(kappa: float, n: int, x: float) -> EvalResult:
    """``W_{kappa+n, kappa-1/2}(x) = (-1)**n n! e**(-x/2) x**kappa L_n^(2 kappa - 1)(x)``."""
    _check_x(x)
    if n < 0:
        raise DomainError("n must be a non-negative integer")
    v = (-1) ** n * math.factorial(n) * math.exp(-x / 2) * x**kappa * sp.laguerre(n, 2 * kappa - 1, x)
    return EvalResult(v, 64 * sp._EPS * abs(v) * (n + 1), "laguerre-family")


def w_upper_gamma_family(n: int, x: float) -> EvalResult:
    """``W_{n/2,(n+1)/2}(x) = x**(-n/2) e**(x/2) Gamma(1+n, x)``."""
    _check_x(x)
    if n < 0:
        raise DomainError("n must be a non-negative integer")
    # e^{x/2} Gamma(1+n, x) = n! e^{-x/2} e_n(x), avoiding overflow of e^{x/2}
    v = x ** (-n / 2) * math.exp(-x / 2) * math.factorial(n) * sp.exp_polynomial(n, x)
    return EvalResult(v, 16 * sp._EPS * abs(v), "upper-gamma-family")


def classify(kappa: float, mu: float) -> WFamily:
    """Total classification of ``(kappa, mu)`` into a reduction family."""
    am = abs(mu)
    if snap_rational(kappa) is not None and snap_rational(am) is not None:
        if (snap_rational(kappa), snap_rational(am)) in _TABLE5_INDEX:
            return WFamily.TABLE5_ROW
    if abs(kappa - am - 0.5) <= 1e-12:
        return WFamily.KAPPA_MU_PLUS_HALF
    if abs(kappa - 0.5 + am) <= 1e-12:
        return WFamily.KAPPA_HALF_MINUS_MU
    n2 = snap_int(2 * kappa)
    if n2 is not None and n2 >= 0 and abs(am - (n2 + 1) / 2) <= 1e-12:
        return WFamily.UPPER_GAMMA
    if laguerre_base(kappa, mu) is not None:
        return WFamily.LAGUERRE
    if abs(kappa) <= 1e-12:
        return WFamily.KAPPA0
    if snap_int(2 * am) is not None:
        return WFamily.MU_HALF_INTEGER
    return WFamily.GENERIC


# ---------------------------------------------------------------------------
# M and W


def whittaker_m(kappa: float, mu: float, x: float, ctl: SeriesControl = _SCTL) -> EvalResult:
    """``M_{kappa,mu}(x) = x**(mu+1/2) e**(-x/2) 1F1(1/2+mu-kappa; 1+2mu; x)``.

    The series is summed directly.  For ``x > 0`` its terms are eventually
    positive, whereas Kummer's transformation would give an alternating
    series, so no transformation is applied.
    """
    _check_x(x)
    b = 1.0 + 2.0 * mu
    if snap_int(b) is not None and b <= 0 and b == round(b):
        raise PoleError(f"M is undefined for 2mu = {2 * mu}")
    a = 0.5 + mu - kappa
    s = hyper.pfq([a], [b], x, ctl)
    v = x ** (mu + 0.5) * math.exp(-x / 2) * s.value
    method = "series"
    err = abs(x ** (mu + 0.5)) * s.tail_bound + 16 * sp._EPS * abs(v)
    return EvalResult(v, err, method)


def _w_combination(kappa: float, mu: float, x: float, ctl: SeriesControl) -> tuple[float, float]:
    """Two-M combination; returns (value, magnitude of the largest term)."""
    t1 = sp.gamma(-2 * mu) * sp.rgamma(0.5 - mu - kappa) * whittaker_m(kappa, mu, x, ctl).value
    t2 = sp.gamma(2 * mu) * sp.rgamma(0.5 + mu - kappa) * whittaker_m(kappa, -mu, x, ctl).value
    return t1 + t2, max(abs(t1), abs(t2))


def _w_quadrature(kappa: float, mu: float, x: float, qctl: QuadratureControl) -> EvalResult:
    a = 0.5 + mu - kappa
    r = quad.laplace_u(a, 1.0 + 2.0 * mu, x, qctl)
    pref = math.exp(-x / 2 + (mu + 0.5) * math.log(x))
    return EvalResult(pref * r.value, pref * r.abs_err, "quadrature", r.flags)


def whittaker_w(kappa: float, mu: float, x: float, method: str = "auto",
                ctl: SeriesControl = _SCTL, qctl: QuadratureControl = _QCTL) -> EvalResult:
    """Whittaker function ``W_{kappa,mu}(x)`` for real parameters and ``x > 0``.

    Parameters
    ----------
    method
        ``"auto"``, ``"combination"`` (needs ``2 mu`` non-integer),
        ``"tricomi"`` or ``"quadrature"``.

    Returns
    -------
    EvalResult
        ``method`` records the route actually taken.
    """
    _check_x(x)
    mu = abs(mu)
    method = method.lower()
    if method == "combination":
        if snap_int(2 * mu, 1e-9) is not None:
            raise PoleError("the two-M combination needs 2mu outside the integers")
        v, big = _w_combination(kappa, mu, x, ctl)
        return EvalResult(v, 32 * sp._EPS * big, "combination")
    if method == "tricomi":
        u = hyper.tricomi_u(0.5 + mu - kappa, 1.0 + 2.0 * mu, x, ctl)
        pref = math.exp(-x / 2 + (mu + 0.5) * math.log(x))
        return EvalResult(pref * u.value, pref * u.abs_err, "tricomi:" + u.method, u.flags)
    if method == "quadrature":
        return _w_quadrature(kappa, mu, x, qctl)
    if method != "auto":
        raise DomainError(f"unknown method {method!r}")

    hit = table5_lookup(kappa, mu, x)
    if hit is not None:
        return hit
    base = laguerre_base(kappa, mu)
    if base is not None:
        return w_laguerre_family(base[0], base[1], x)
    if abs(kappa) <= 1e-12:
        v = math.sqrt(x / math.pi) * float(sc.kv(mu, x / 2))
        return EvalResult(v, 16 * sp._EPS * abs(v), "kappa0-bessel")
    if abs(2 * mu - round(2 * mu)) >= _NEAR_INT_2MU:
        v, big = _w_combination(kappa, mu, x, ctl)
        if big <= _COMBINATION_MAX_LOSS * abs(v):
            return EvalResult(v, 32 * sp._EPS * big, "combination")
    return _w_quadrature(kappa, mu, x, qctl)


def w_array(kappa: float, mu: float, t: np.ndarray) -> np.ndarray:
    """W at many arguments (used inside quadratures of W(t)/t)."""
    return np.array([whittaker_w(kappa, mu, float(ti)).value if ti > 0 else 0.0 for ti in np.ravel(t)])


def _w_small_array(kappa: float, mu: float, t: np.ndarray) -> np.ndarray:
    """Vectorised two-M combination for small arguments, with a limit at integer 2mu."""
    mu = abs(mu)

    def comb(m):
        out = np.zeros_like(t)
        for sgn in (1.0, -1.0):
            ms = sgn * m
            coef = float(sc.gamma(-2 * ms) * sc.rgamma(0.5 - ms - kappa))
            a, b = 0.5 + ms - kappa, 1.0 + 2 * ms
            term = np.ones_like(t)
            tot = np.ones_like(t)
            for n in range(2000):
                term = term * (a + n) / ((b + n) * (n + 1)) * t
                tot = tot + term
                if np.all(np.abs(term) <= 1e-17 * np.abs(tot)) and n > 3:
                    break
            out = out + coef * t ** (ms + 0.5) * np.exp(-t / 2) * tot
        return out

    if abs(2 * mu - round(2 * mu)) >= _NEAR_INT_2MU:
        return comb(mu)
    d = 2e-4
    return (4 * comb(mu + d) - comb(mu + 2 * d)) / 3


# ---------------------------------------------------------------------------
# integral Whittaker functions


def _laguerre_coeffs(k: float, n: int) -> list[float]:
    """``(-1)**n (2k)_n / (2k)_m * C(n, m) (-2)**m`` formed without division."""
    out = []
    for m in range(n + 1):
        c = 1.0
        for j in range(m, n):
            c *= 2 * k + j
        out.append((-1) ** n * c * math.comb(n, m) * (-2.0) ** m)
    return out


def wi_lower(kappa: float, mu: float, x: float, qctl: QuadratureControl = _QCTL) -> EvalResult:
    """``Wi_{kappa,mu}(x) = int_0^x W_{kappa,mu}(t)/t dt``."""
    _check_x(x)
    base = laguerre_base(kappa, mu)
    if base is not None and base[0] > 0:
        k, n = base
        terms = [c * sp.lower_gamma(k + m, x / 2).real for m, c in enumerate(_laguerre_coeffs(k, n))]
        v = 2**k * math.fsum(terms)
        return EvalResult(v, 64 * sp._EPS * max(map(abs, terms)) * 2**k, "laguerre-family")
    am = abs(mu)
    if am >= 0.5:
        raise DivergentIntegral(f"W(t)/t is not integrable at 0 for |mu| = {am}")
    split = min(x, 1.0)
    first = quad.finite(lambda t: _w_small_array(kappa, am, t) / t, 0.0, split, qctl)
    total, err = first.value, first.abs_err
    if x > split:
        second = quad.finite(lambda t: w_array(kappa, am, t) / t, split, x, qctl)
        total += second.value
        err += second.abs_err
    return EvalResult(total, err, "quadrature")


def wi_upper(kappa: float, mu: float, x: float, qctl: QuadratureControl = _QCTL) -> EvalResult:
    """``wi_{kappa,mu}(x) = int_x^inf W_{kappa,mu}(t)/t dt``."""
    _check_x(x)
    base = laguerre_base(kappa, mu)
    if base is not None:
        k, n = base
        terms = [c * sp.upper_gamma(k + m, x / 2) for m, c in enumerate(_laguerre_coeffs(k, n))]
        v = 2**k * math.fsum(terms)
        return EvalResult(v, 64 * sp._EPS * max(map(abs, terms)) * 2**k, "laguerre-family")
    if abs(kappa) <= 1e-12:
        n2 = snap_int(2 * abs(mu))
        if n2 is not None and n2 % 2 == 1:
            n = (n2 - 1) // 2
            terms = [math.factorial(n + k) * 2.0**-k / (math.factorial(k) * math.factorial(n - k))
                     * sp.upper_gamma(-k, x / 2) for k in range(n + 1)]
            v = math.fsum(terms)
            return EvalResult(v, 64 * sp._EPS * max(map(abs, terms)), "kappa0-halfint")
    return _wi_upper_direct(kappa, mu, x, qctl)


def _wi_upper_direct(kappa: float, mu: float, x: float, qctl: QuadratureControl = _QCTL) -> EvalResult:
    r = quad.tail(lambda t: w_array(kappa, mu, t) / t, x, qctl)
    return EvalResult(r.value, r.abs_err, "quadrature", r.flags)


def _upper_gamma_vec(s: float, y: np.ndarray) -> np.ndarray:
    return sc.gamma(s) * sc.gammaincc(s, y)


def _wi_kernel(kappa: float, mu: float, x: float):
    a = 0.5 + mu - kappa
    if a < 0:
        raise DomainError("the integral representation of wi needs 1/2 + |mu| - kappa >= 0")
    s = 0.5 + mu

    def base(t):
        return np.exp((a - 1) * np.log(t) + (mu + kappa - 0.5) * np.log1p(t) - s * np.log(0.5 + t)) \
            * _upper_gamma_vec(s, x * (t + 0.5))

    return a, base


def wi_upper_integral_rep(kappa: float, mu: float, x: float, qctl: QuadratureControl = _QCTL) -> EvalResult:
    """``wi`` from its single-integral representation with an incomplete-gamma kernel."""
    _check_x(x)
    mu = abs(mu)
    a, base = _wi_kernel(kappa, mu, x)
    if a == 0:
        # t^(a-1)/Gamma(a) tends to a unit mass at t = 0 as a -> 0+
        s = 0.5 + mu
        v = 2.0**s * float(_upper_gamma_vec(s, np.array(x / 2)))
        return EvalResult(v, 1e-16 * abs(v), "integral-rep:endpoint-limit")
    r = quad.half_line(base, qctl, left_exponent=a - 1)
    scale = float(sc.rgamma(a))
    return EvalResult(scale * r.value, abs(scale) * r.abs_err, "integral-rep", r.flags)


def dwi_dkappa_integral_rep(kappa: float, mu: float, x: float, qctl: QuadratureControl = _QCTL) -> EvalResult:
    """``d wi / d kappa`` by differentiating the integral representation under the integral sign."""
    _check_x(x)
    mu = abs(mu)
    a, base = _wi_kernel(kappa, mu, x)
    if a == 0:
        raise DomainError("the differentiated representation needs 1/2 + |mu| - kappa > 0")
    psi = float(sc.psi(a))
    r = quad.half_line(lambda t: (psi + np.log1p(1.0 / t)) * base(t), qctl, left_exponent=a - 1)
    scale = float(sc.rgamma(a))
    return EvalResult(scale * r.value, abs(scale) * r.abs_err, "integral-rep", r.flags)
