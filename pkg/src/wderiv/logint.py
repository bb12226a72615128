"""Logarithmic Laplace integrals and the Bessel-kernel representation of W.

With ``a = mu - kappa + 1/2`` and ``p = mu + kappa - 1/2``::

    I1*(kappa, mu; x) = int_0^inf e^{-xt} t^(a-1) (1+t)^p ln((1+t)/t) dt
    I3*(kappa, mu; x) = int_0^inf e^{-xt} t^(a-1) (1+t)^p ln(t (1+t)) dt

``I2*`` and ``I4*`` are the same integrals written over ``(1, inf)``; they
equal ``e^{-x} I1*`` and ``e^{-x} I3*``.  The one-parameter family
``Ipm(nu, x) = int_0^inf e^{-xt} t^nu ln(t^{+-1} (1+t)) dt`` has a closed
form in terms of ``2F2`` and incomplete gamma functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import kv
from scipy.special import kve as _kve

from . import hyper
from . import special as sp
from ._common import EvalResult, QuadratureControl, SeriesControl, real_part, snap_int
from .errors import DivergentIntegral, DomainError, PoleError
from .quad import half_line, tail
from .whittaker import whittaker_w

__all__ = [
    "SingularitySpec",
    "quad_I",
    "log_laplace_I",
    "I1_star",
    "I2_star",
    "I3_star",
    "I4_star",
    "I1_star_n_family",
    "I1_star_zero_halfint",
    "I3_star_n_family",
    "I3_star_zero_halfint",
    "H_bessel",
    "bessel_rep_W",
]

_QCTL = QuadratureControl()
_SCTL = SeriesControl()
_EPS = sp._EPS


@dataclass(frozen=True)
class SingularitySpec:
    """Endpoint behaviour ``t**left_exponent`` (times ``ln t`` when ``has_log``) at ``t -> 0``."""

    left_exponent: float = 0.0
    has_log: bool = False

    def __post_init__(self):
        if not self.left_exponent > -1.0:
            raise DivergentIntegral(f"t**{self.left_exponent} is not integrable at 0")


def quad_I(spec: SingularitySpec, f, qctl: QuadratureControl = _QCTL) -> EvalResult:
    """``int_0^inf f(t) dt`` by double-exponential quadrature."""
    return half_line(f, qctl, spec.left_exponent)


def _check_x(x: float) -> None:
    if not (x > 0 and math.isfinite(x)):
        raise DomainError("x must be finite and positive")


# ---------------------------------------------------------------------------
# the one-parameter family


def log_laplace_I(sign: int | str, nu: float, x: float, route: str = "closed_form",
            qctl: QuadratureControl = _QCTL) -> EvalResult:
    """``int_0^inf e^{-xt} t^nu ln(t^{+-1} (1+t)) dt`` for ``nu > -1``.

    Closed form::

        Gamma(nu+1)/x^(nu+1) { x/(nu+1) 2F2(1,1;2,2+nu;-x)
                               - e^{-i pi nu} Gamma(-nu,x) gamma(nu+1,-x)
                               + (1 +- 1) [psi(nu+1) - ln x] }
    """
    _check_x(x)
    s = _parse_sign(sign)
    if not nu > -1:
        raise DivergentIntegral("the family needs nu > -1")
    if route == "quadrature":
        split = min(1.0, max(0.05, (nu + 1) / x))

        def f(t):
            return np.exp(-x * t + nu * np.log(t)) * (s * np.log(t) + np.log1p(t))

        return quad_I(SingularitySpec(nu, True), f, QuadratureControl(qctl.target_tol, qctl.max_level, split))
    if route != "closed_form":
        raise DomainError(f"unknown route {route!r}")
    hyp = x / (nu + 1) * hyper.pfq([1.0, 1.0], [2.0, 2.0 + nu], -x).value
    k = snap_int(nu, 0.0)
    if k is not None:
        # e^{-i pi k} = (-1)^k and Gamma(-k, x) through E1
        gam = (-1) ** k * sp.upper_gamma(-k, x) * sp.lower_gamma(k + 1, -x)
    else:
        phase = complex(math.cos(math.pi * nu), -math.sin(math.pi * nu))
        gam = phase * sp.upper_gamma(-nu, x) * sp.lower_gamma(nu + 1, -x)
    brace = hyp - gam
    if s > 0:
        brace = brace + 2 * (sp.digamma(nu + 1) - math.log(x))
    pref = sp.gamma(nu + 1) * x ** (-nu - 1)
    v, imag = real_part(pref * brace, "log_laplace_I")
    err = 64 * _EPS * pref * max(abs(hyp), abs(gam), 1.0)
    return EvalResult(v, err, "closed-form", ("imag-residual",) if imag > 1e-8 else (), imag)


def _parse_sign(sign) -> int:
    if sign in (1, "+", "plus"):
        return 1
    if sign in (-1, "-", "minus"):
        return -1
    raise DomainError(f"sign must be + or -, got {sign!r}")


# ---------------------------------------------------------------------------
# I1* .. I4*


def _exponents(kappa: float, mu: float) -> tuple[float, float]:
    a = mu - kappa + 0.5
    if not a > 0:
        raise DivergentIntegral("the logarithmic integrals need mu - kappa > -1/2")
    return a, mu + kappa - 0.5


def _quad_star(kappa, mu, x, kernel, qctl) -> EvalResult:
    a, p = _exponents(kappa, mu)
    split = min(1.0, max(0.05, a / x))

    def f(t):
        return np.exp(-x * t + (a - 1.0) * np.log(t) + p * np.log1p(t)) * kernel(t)

    r = quad_I(SingularitySpec(a - 1.0, True), f, QuadratureControl(qctl.target_tol, qctl.max_level, split))
    return EvalResult(r.value, r.abs_err, "quadrature", r.flags)


def _tail_star(kappa, mu, x, kernel, qctl) -> EvalResult:
    """The ``(1, inf)`` forms, integrated in ``s = t - 1`` with exp-sinh nodes only."""
    a, p = _exponents(kappa, mu)

    def f(s):
        t = 1.0 + s
        return np.exp(-x * t + p * np.log(t) + (a - 1.0) * np.log(s)) * kernel(s)

    r = tail(f, 0.0, qctl)
    return EvalResult(r.value, r.abs_err, "quadrature:shifted", r.flags)


def _ln_ratio(t):
    return np.log1p(1.0 / t)


def _ln_product(t):
    return np.log(t) + np.log1p(t)


def I1_star(kappa: float, mu: float, x: float, route: str = "closed_form",
            qctl: QuadratureControl = _QCTL, ctl: SeriesControl = _SCTL) -> EvalResult:
    """``I1*``; ``route`` is ``"closed_form"`` (needs ``2mu`` non-integer) or ``"quadrature"``."""
    _check_x(x)
    a, _ = _exponents(kappa, mu)
    if route == "quadrature":
        return _quad_star(kappa, mu, x, _ln_ratio, qctl)
    if route != "closed_form":
        raise DomainError(f"unknown route {route!r}")
    if snap_int(2 * mu, 1e-9) is not None:
        raise PoleError("the general closed form needs 2mu outside the integers")
    ap = 0.5 - mu - kappa
    b = 1.0 + 2 * mu
    ga, gm = sp.gamma(a), sp.gamma(-2 * mu)
    m = hyper.pfq([a], [b], x, ctl).value
    g_1 = hyper.g1(a, b, x, ctl).value
    g_2 = hyper.g1(ap, 1.0 - 2 * mu, x, ctl).value
    # B(a,-2mu) = Gamma(a) Gamma(-2mu) / Gamma(ap); psi(ap)/Gamma(ap) stays finite at its poles
    t1 = ga * gm * (sp.rgamma_psi(ap) - sp.rgamma(ap) * sp.digamma(a)) * m
    t2 = -ga * gm * sp.rgamma(ap) * g_1
    t3 = -sp.gamma(2 * mu) * x ** (-2 * mu) * g_2
    v = math.fsum([t1, t2, t3])
    return EvalResult(v, 64 * _EPS * max(abs(t1), abs(t2), abs(t3)), "closed-form")


def I2_star(kappa: float, mu: float, x: float, route: str = "identity",
            qctl: QuadratureControl = _QCTL) -> EvalResult:
    """``int_1^inf e^{-xt} t^(mu+kappa-1/2) (t-1)^(mu-kappa-1/2) ln(t/(t-1)) dt``.

    ``route="identity"`` returns ``e^{-x} I1*``; ``"quadrature"``
    integrates the shifted form independently.
    """
    _check_x(x)
    if route == "quadrature":
        return _tail_star(kappa, mu, x, _ln_ratio, qctl)
    r = I1_star(kappa, mu, x, "closed_form" if snap_int(2 * mu, 1e-9) is None else "quadrature", qctl)
    e = math.exp(-x)
    return EvalResult(e * r.value, e * r.abs_err, "identity:" + r.method, r.flags)


def I3_star(kappa: float, mu: float, x: float, route: str = "closed_form",
            qctl: QuadratureControl = _QCTL, ctl: SeriesControl = _SCTL) -> EvalResult:
    """``I3*``; the closed form is ``Gamma(a) [psi(a) U + dU/da + 2 dU/db]`` at ``U(a, 1+2mu, x)``."""
    _check_x(x)
    a, _ = _exponents(kappa, mu)
    if route == "quadrature":
        return _quad_star(kappa, mu, x, _ln_product, qctl)
    if route != "closed_form":
        raise DomainError(f"unknown route {route!r}")
    b = 1.0 + 2 * mu
    method = "analytic" if abs(b - round(b)) >= 1e-3 else "analytic_limit"
    d = hyper.u_param_derivs(a, b, x, ctl, method=method)
    u = hyper.tricomi_u(a, b, x, ctl)
    ga = sp.gamma(a)
    terms = [sp.digamma(a) * u.value, d.dU_da, 2 * d.dU_db]
    v = ga * math.fsum(terms)
    err = abs(ga) * (d.err + abs(sp.digamma(a)) * u.abs_err + 64 * _EPS * max(abs(t) for t in terms))
    return EvalResult(v, err, "closed-form:" + d.method)


def I4_star(kappa: float, mu: float, x: float, route: str = "identity",
            qctl: QuadratureControl = _QCTL) -> EvalResult:
    """``int_1^inf e^{-xt} t^(mu+kappa-1/2) (t-1)^(mu-kappa-1/2) ln(t (t-1)) dt``."""
    _check_x(x)
    if route == "quadrature":
        # ln(t (t-1)) = ln(1+s) + ln s with s = t - 1
        return _tail_star(kappa, mu, x, _ln_product, qctl)
    r = I3_star(kappa, mu, x, "closed_form", qctl)
    e = math.exp(-x)
    return EvalResult(e * r.value, e * r.abs_err, "identity:" + r.method, r.flags)


# ---------------------------------------------------------------------------
# integer families


def _bracket(j: int, x: float) -> float:
    """``(-1)^(j+1) Gamma(-j,x) gamma(j+1,-x) - sum_{l=1}^j C(j,l) (-x)^(-l) gamma(l,x)``."""
    pair = (-1) ** (j + 1) * sp.upper_gamma(-j, x) * sp.lower_gamma(j + 1, -x).real
    ell = math.fsum(math.comb(j, l) * (-x) ** (-l) * sp.lower_gamma(l, x).real for l in range(1, j + 1))
    return pair - ell


def _nonneg(n) -> int:
    if int(n) != n or n < 0:
        raise DomainError("n must be a non-negative integer")
    return int(n)


def _n_family(n: int, x: float, log_part: float, hsign: int) -> EvalResult:
    # e^x Gamma(n+1, x) = n! e_n(x)
    lead = log_part * math.factorial(n) * sp.exp_polynomial(n, x) / x ** (n + 1)
    parts = [lead]
    for k in range(n + 1):
        c = math.factorial(n) * x ** (-k - 1) / math.factorial(n - k)
        parts.append(c * (_bracket(k, x) + hsign * sp.harmonic(k)))
    v = math.fsum(parts)
    return EvalResult(v, 64 * _EPS * max(abs(p) for p in parts), "closed-form")


def I1_star_n_family(n: int, x: float) -> EvalResult:
    """``I1*(n/2, (n+1)/2; x)`` in finite terms."""
    _check_x(x)
    n = _nonneg(n)
    return _n_family(n, x, sp.ein(x).real, -1)


def I3_star_n_family(n: int, x: float) -> EvalResult:
    """``I3*(n/2, (n+1)/2; x)`` in finite terms."""
    _check_x(x)
    n = _nonneg(n)
    return _n_family(n, x, sp.e1(x).real - math.log(x) - sp.EULER_GAMMA, 1)


def _zero_family(n: int, x: float, log_part: float, hsign: int) -> EvalResult:
    # n! e^{x/2} K_{n+1/2}(x/2) / (sqrt(pi) x^{n+1/2}), with the scaled Bessel function
    lead = math.factorial(n) * float(_kve(n + 0.5, x / 2)) / (math.sqrt(math.pi) * x ** (n + 0.5)) * log_part
    parts = [lead]
    for k in range(n + 1):
        j = n + k
        c = math.factorial(n) * math.factorial(j) * x ** (-k) / (x ** (n + 1) * math.factorial(k) * math.factorial(n - k))
        parts.append(c * (_bracket(j, x) + hsign * sp.harmonic(j)))
    v = math.fsum(parts)
    return EvalResult(v, 64 * _EPS * max(abs(p) for p in parts), "closed-form")


def I1_star_zero_halfint(n: int, x: float) -> EvalResult:
    """``I1*(0, n + 1/2; x)`` in finite terms."""
    _check_x(x)
    n = _nonneg(n)
    return _zero_family(n, x, sp.ein(x).real, -1)


def I3_star_zero_halfint(n: int, x: float) -> EvalResult:
    """``I3*(0, n + 1/2; x)`` in finite terms."""
    _check_x(x)
    n = _nonneg(n)
    return _zero_family(n, x, sp.e1(x).real - math.log(x) - sp.EULER_GAMMA, 1)


# ---------------------------------------------------------------------------
# Bessel-kernel integrals


def _bessel_integrand(kappa: float, mu: float, x: float, with_log: bool):
    nu = 2 * abs(mu)
    c = 2 * math.sqrt(x)

    def f(u):
        with np.errstate(all="ignore"):
            k = kv(nu, c * u)
            g = np.exp(-u * u - 2 * kappa * np.log(u)) * k
            return g * np.log(u) if with_log else g

    return f


def _bessel_quad(kappa, mu, x, with_log, qctl) -> EvalResult:
    lead = -2 * kappa - 2 * abs(mu)
    split = min(1.0, max(0.05, 1.0 / math.sqrt(x)))
    return quad_I(SingularitySpec(lead, with_log), _bessel_integrand(kappa, mu, x, with_log),
                  QuadratureControl(qctl.target_tol, qctl.max_level, split))


def H_bessel(kappa: float, mu: float, x: float, route: str = "quadrature",
             qctl: QuadratureControl = _QCTL) -> EvalResult:
    """``int_0^inf e^{-t} t^(-kappa-1/2) K_{2mu}(2 sqrt(x t)) ln t dt`` for ``|mu| < 1/2 - kappa``.

    ``route="quadrature"`` integrates in ``u = sqrt(t)``; ``route="via_i1"``
    uses ``1/2 Gamma(a') {Gamma(a) psi(a') W / (sqrt(x) e^{-x/2}) - x^mu I1*}``
    with ``a = 1/2 + mu - kappa`` and ``a' = 1/2 - mu - kappa``.
    """
    _check_x(x)
    mu = abs(mu)
    if not mu < 0.5 - kappa:
        raise DomainError("the Bessel-kernel integral needs |mu| < 1/2 - kappa")
    if route == "quadrature":
        r = _bessel_quad(kappa, mu, x, True, qctl)
        return EvalResult(4 * r.value, 4 * r.abs_err, "quadrature", r.flags)
    if route != "via_i1":
        raise DomainError(f"unknown route {route!r}")
    a, ap = 0.5 + mu - kappa, 0.5 - mu - kappa
    w = whittaker_w(kappa, mu, x)
    i1 = I1_star(kappa, mu, x, "closed_form" if snap_int(2 * mu, 1e-9) is None else "quadrature", qctl)
    t1 = sp.gamma(a) * sp.digamma(ap) * w.value / (math.sqrt(x) * math.exp(-x / 2))
    t2 = x**mu * i1.value
    g = 0.5 * sp.gamma(ap)
    err = abs(g) * (abs(t1) * (w.abs_err / max(abs(w.value), 1e-300) + 64 * _EPS) + x**mu * i1.abs_err)
    return EvalResult(g * (t1 - t2), err, "via-i1:" + i1.method)


def bessel_rep_W(kappa: float, mu: float, x: float, qctl: QuadratureControl = _QCTL) -> EvalResult:
    """``W_{kappa,mu}(x) = 2 sqrt(x) e^{-x/2} / (Gamma(a) Gamma(a')) int_0^inf e^{-t} t^(-kappa-1/2) K_{2mu}(2 sqrt(x t)) dt``."""
    _check_x(x)
    mu = abs(mu)
    if not 0.5 - mu - kappa > 0:
        raise DomainError("the Bessel representation needs 1/2 - |mu| - kappa > 0")
    r = _bessel_quad(kappa, mu, x, False, qctl)
    c = 4 * math.sqrt(x) * math.exp(-x / 2) * sp.rgamma(0.5 + mu - kappa) * sp.rgamma(0.5 - mu - kappa)
    return EvalResult(c * r.value, abs(c) * r.abs_err, "bessel-quadrature", r.flags)
