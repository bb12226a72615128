"""First derivatives of ``W_{kappa,mu}(x)`` with respect to ``kappa`` and ``mu``.

Two general routes are available: term-by-term differentiation of the
two-M combination (for ``d/dkappa``) and of the Tricomi form (for
``d/dmu``).  Around them sit the exact reductions for the special
parameter lines, and :func:`dW_auto` picks between everything.

Conventions: ``d/dkappa`` is even in ``mu`` and ``d/dmu`` is odd, so the
family functions take a ``sign`` argument where it matters.  Intermediate
quantities with ``(-x)**p`` use the ``arg = +pi`` branch; the final value
is the real part and the relative imaginary part is reported as
``imag_residual``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from dataclasses import dataclass
from enum import Enum

from . import hyper
from . import special as sp
from ._common import (
    CaseKey,
    DerivResult,
    EvalResult,
    QuadratureControl,
    SeriesControl,
    WhittakerPoint,
    real_part,
    snap_int,
)
from .errors import DomainError, NonConvergence, PoleError
from .whittaker import whittaker_m, whittaker_w

__all__ = [
    "Wrt",
    "Route",
    "DerivRequest",
    "dW_dkappa_series",
    "dW_dkappa_mu_plus_half",
    "dW_dkappa_n_mu_half",
    "dW_dkappa_half_minus_mu",
    "dW_dkappa_integer_family",
    "dW_dkappa_n_half_family",
    "dW_dkappa_zero_halfint",
    "dW_dmu_series",
    "dW_dmu_mu_plus_half",
    "dW_dmu_half_minus_mu",
    "dW_dmu_integer_family",
    "dW_dmu_n_half_family",
    "dW_dmu_zero_halfint",
    "dW_dmu_kappa0",
    "dK_dnu",
    "closed_form_case",
    "dW_auto",
    "dW",
]

_SCTL = SeriesControl()
_EPS = sp._EPS
_NEAR_INT_2MU = 1e-4
_TOL = 1e-12


class Wrt(str, Enum):
    KAPPA = "kappa"
    MU = "mu"


class Route(str, Enum):
    AUTO = "auto"
    CLOSED_FORM = "closed_form"
    SERIES = "series"
    INTEGRAL_REP = "integral_rep"
    FINITE_DIFFERENCE = "finite_difference"


@dataclass(frozen=True)
class DerivRequest:
    point: WhittakerPoint
    wrt: Wrt = Wrt.KAPPA
    route: Route = Route.AUTO

    def __post_init__(self):
        if not self.point.x > 0:
            raise DomainError("derivatives are evaluated for x > 0")


def _check_x(x: float) -> None:
    if not (x > 0 and math.isfinite(x)):
        raise DomainError("x must be finite and positive")


def _result(z, scale: float, case: CaseKey, method: str, flags=()) -> DerivResult:
    v, imag = real_part(z, method)
    err = 64 * _EPS * max(scale, abs(v))
    flags = tuple(flags)
    if imag > 1e-8:
        flags += ("imag-residual",)
    return DerivResult(v, err, case, method, imag, flags)


def _sign(s: int) -> int:
    if s not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    return s


# ---------------------------------------------------------------------------
# shared pieces of the incomplete-gamma reductions


def _ell_sum(k: int, x: float) -> float:
    """``sum_{l=1}^{k} C(k,l) (-x)**(-l) gamma(l, x)``."""
    return math.fsum(math.comb(k, l) * (-x) ** (-l) * sp.lower_gamma(l, x).real for l in range(1, k + 1))


def _gamma_pair(k: int, x: float) -> float:
    """``(-1)**(k+1) Gamma(-k, x) gamma(k+1, -x)`` (real for integer k)."""
    return (-1) ** (k + 1) * sp.upper_gamma(-k, x) * sp.lower_gamma(k + 1, -x).real


# ---------------------------------------------------------------------------
# d/dkappa


def dW_dkappa_series(kappa: float, mu: float, x: float, ctl: SeriesControl = _SCTL,
                     variant: str = "direct") -> DerivResult:
    """``d/dkappa`` of the two-M combination, summed term by term.

    ``variant="kummer"`` writes the ``+|mu|`` term's parameter derivative
    through ``-e**x G1(b-a; b; -x)`` instead of ``G1(a; b; x)``.
    """
    _check_x(x)
    mu = abs(mu)
    if snap_int(2 * mu, 1e-9) is not None:
        raise PoleError("the series route needs 2mu outside the integers")
    if variant not in ("direct", "kummer"):
        raise DomainError(f"unknown variant {variant!r}")
    parts = []
    for s in (mu, -mu):
        a = 0.5 + s - kappa
        b = 1.0 + 2 * s
        ap = 0.5 - s - kappa
        g = sp.gamma(-2 * s)
        m = whittaker_m(kappa, s, x, ctl).value
        pref = math.exp(-x / 2 + (0.5 + s) * math.log(x))
        if variant == "kummer" and s > 0:
            d1f1 = -math.exp(x) * hyper.g1(b - a, b, -x, ctl).value
        else:
            d1f1 = hyper.g1(a, b, x, ctl).value
        parts.append(g * sp.rgamma_psi(ap) * m)
        parts.append(-g * sp.rgamma(ap) * pref * d1f1)
    v = math.fsum(parts)
    big = max(abs(p) for p in parts)
    return DerivResult(v, 64 * _EPS * big, CaseKey.GENERIC_SERIES, "series:" + variant)


def _mu_plus_half_core(mu: float, x: float) -> tuple[complex, complex, float]:
    """Pieces shared by both derivatives on ``kappa = mu + 1/2``.

    Returns ``(x**mu * stuff, Gamma(2mu+1) x**(-mu) (-x)**(2mu) gamma(-2mu, -x), scale)``
    with ``stuff = x/(2mu+1) 2F2(1,1;2mu+2,2;x)``.
    """
    if snap_int(2 * mu, 1e-9) is not None:
        raise PoleError("this closed form needs 2mu outside the integers")
    f22 = hyper.pfq([1.0, 1.0], [2 * mu + 2, 2.0], x).value
    t_hyp = x / (2 * mu + 1) * f22
    t_gam = sp.gamma(2 * mu + 1) * x ** (-mu) * sp.neg_power(x, 2 * mu) * sp.lower_gamma(-2 * mu, -x)
    return t_hyp, t_gam, max(abs(t_hyp) * x**mu, abs(t_gam))


def dW_dkappa_mu_plus_half(mu: float, x: float) -> DerivResult:
    """``dW/dkappa`` on the line ``kappa = mu + 1/2``."""
    _check_x(x)
    t_hyp, t_gam, big = _mu_plus_half_core(mu, x)
    pref = math.sqrt(x) * math.exp(-x / 2)
    z = pref * (x**mu * (sp.digamma(-2 * mu) - t_hyp) + t_gam)
    return _result(z, pref * big, CaseKey.KAPPA_MU_PLUS_HALF, "closed-form:kappa=mu+1/2")


def dW_dmu_mu_plus_half(mu: float, x: float) -> DerivResult:
    """``dW/dmu`` on the line ``kappa = mu + 1/2``."""
    _check_x(x)
    t_hyp, t_gam, big = _mu_plus_half_core(mu, x)
    pref = math.sqrt(x) * math.exp(-x / 2)
    z = pref * (x**mu * (t_hyp - sp.digamma(-2 * mu) + math.log(x)) - t_gam)
    return _result(z, pref * big, CaseKey.KAPPA_MU_PLUS_HALF, "closed-form:kappa=mu+1/2")


def _n_mu_half_sum(n: int, x: float) -> tuple[float, float]:
    """Composition form and expanded Laguerre form of the integer-kappa derivative.

    The weight of the ``l``-th term is ``(n+l)/(n-l)``; with the reciprocal
    weight the result disagrees with finite differences from ``n = 2`` on.
    """
    lx = math.log(x)
    e = math.exp(-x / 2)

    def w(l):
        return (-1) ** l * math.factorial(l) * e * sp.laguerre(l, -1.0, x)

    parts = [(-1) ** l * (n + l) / (math.factorial(l) * (n - l)) * w(l) for l in range(n)]
    a = (-1) ** n * math.factorial(n - 1) * math.fsum(parts) + w(n) * lx
    parts2 = [(n + l) / (n - l) * sp.laguerre(l, -1.0, x) for l in range(n)]
    parts2.append(n * sp.laguerre(n, -1.0, x) * lx)
    b = (-1) ** n * math.factorial(n - 1) * e * math.fsum(parts2)
    return a, b


def dW_dkappa_n_mu_half(n: int, x: float) -> DerivResult:
    """``dW/dkappa`` at ``kappa = n >= 1``, ``mu = +-1/2``; ``err_estimate`` includes the gap between two written forms."""
    _check_x(x)
    if int(n) != n or n < 1:
        raise DomainError("n must be a positive integer")
    a, b = _n_mu_half_sum(int(n), x)
    return DerivResult(a, abs(a - b) + 64 * _EPS * abs(a), CaseKey.KAPPA_N_MU_HALF, "closed-form:kappa=n,mu=1/2")


def _half_minus_mu_pieces(mu: float, x: float) -> tuple[complex, complex, float]:
    """The brace of the ``kappa = 1/2 - mu`` reduction without its log term, in two forms."""
    if snap_int(2 * mu, 1e-9) is not None and 2 * mu <= 0.5:
        raise PoleError("this closed form needs 2mu != 0, -1, -2, ...")
    psi = sp.digamma(2 * mu)
    hyp = x / (2 * mu) * hyper.pfq([1.0, 1.0], [2.0, 1 + 2 * mu], -x).value
    lg = sp.lower_gamma(2 * mu, -x)
    phase = complex(math.cos(2 * math.pi * mu), -math.sin(2 * math.pi * mu))
    gam = (phase * lg) * sp.upper_gamma(1 - 2 * mu, x)
    primary = psi + hyp + gam
    scale = max(abs(psi), abs(hyp), abs(gam))
    bis = None
    if snap_int(2 * mu, 1e-9) is None:
        cot = math.cos(2 * math.pi * mu) / math.sin(2 * math.pi * mu)
        hyp2 = x / (2 * mu - 1) * hyper.pfq([1.0, 1.0], [2.0, 2 - 2 * mu], x).value
        gam2 = math.pi * complex(cot, -1.0) * lg * sp.rgamma(2 * mu)
        bis = psi + gam2 + hyp2
        scale = max(scale, abs(hyp2), abs(gam2))
    return primary, bis, scale


def dW_dkappa_half_minus_mu(mu: float, x: float) -> DerivResult:
    """``dW/dkappa`` on the line ``kappa = 1/2 - mu``.

    The alternative form is also evaluated (when ``2mu`` is not an
    integer) and its distance from the primary form is added to the
    error estimate.
    """
    _check_x(x)
    primary, bis, scale = _half_minus_mu_pieces(mu, x)
    pref = math.exp(-x / 2 + (0.5 - mu) * math.log(x))
    r = _result(pref * primary, pref * scale, CaseKey.KAPPA_HALF_MINUS_MU, "closed-form:kappa=1/2-mu")
    if bis is not None:
        gap = abs(pref * (primary - bis).real)
        r = DerivResult(r.value, r.err_estimate + gap, r.case_used, r.method, r.imag_residual, r.flags)
    return r


def dW_dmu_half_minus_mu(mu: float, x: float, form: str = "primary") -> DerivResult:
    """``dW/dmu`` on the line ``kappa = 1/2 - mu``; ``form`` selects ``"primary"`` or ``"alternative"``."""
    _check_x(x)
    primary, bis, scale = _half_minus_mu_pieces(mu, x)
    lx = math.log(x)
    pref = math.exp(-x / 2 + (0.5 - mu) * lx)
    if form == "alternative":
        if bis is None:
            raise PoleError("the alternative form needs 2mu outside the integers")
        z = bis - lx
    elif form == "primary":
        z = primary - lx
    else:
        raise DomainError(f"unknown form {form!r}")
    r = _result(pref * z, pref * max(scale, abs(lx)), CaseKey.KAPPA_HALF_MINUS_MU, "closed-form:kappa=1/2-mu:" + form)
    if bis is not None:
        gap = abs(pref * (primary - bis).real)
        r = DerivResult(r.value, r.err_estimate + gap, r.case_used, r.method, r.imag_residual, r.flags)
    return r


def _integer_family_sum(m: int, x: float, variant: str) -> tuple[float, float]:
    """``sum_{k=1}^m`` of the integer-family reductions; returns (sum, largest term)."""
    if variant == "limit":
        # gamma(k, -x) = (k-1)! [1 - e^x sum_{j<k} (-x)^j / j!] for integer k.  The e^x parts of the
        # k-terms cancel against each other, so their coefficient is accumulated exactly.
        q = Fraction(x)
        ex_coef = Fraction(0)
        plain = Fraction(0)
        for k in range(1, m + 1):
            fk = math.factorial(k - 1)
            trunc = sum(Fraction((-1) ** j, math.factorial(j)) * q**j for j in range(k))
            ex_coef += fk * (1 - math.comb(m, k) * trunc) / q**k
            plain += math.comb(m, k) * fk / q**k
        ex_part = float(ex_coef) * math.exp(x)
        terms = [ex_part, float(plain)]
    elif variant == "finite":
        terms = [math.factorial(m) * x ** (-k) / (k * math.factorial(m - k)) for k in range(1, m + 1)]
    else:
        raise DomainError(f"unknown variant {variant!r}")
    return math.fsum(terms), max((abs(t) for t in terms), default=0.0)


def _check_nonneg(n, name="m") -> int:
    if int(n) != n or n < 0:
        raise DomainError(f"{name} must be a non-negative integer")
    return int(n)


def dW_dkappa_integer_family(m: int, x: float, variant: str = "limit") -> DerivResult:
    """``dW/dkappa`` at ``kappa = (1+m)/2``, ``mu = +-m/2``."""
    _check_x(x)
    m = _check_nonneg(m)
    s, big = _integer_family_sum(m, x, variant)
    pref = math.exp(-x / 2 + (1 + m) / 2 * math.log(x))
    v = pref * (math.log(x) - s)
    return DerivResult(v, 64 * _EPS * pref * max(big, abs(math.log(x))), CaseKey.INTEGER_LIMIT,
                       "closed-form:integer-family:" + variant)


def dW_dmu_integer_family(m: int, x: float, variant: str = "limit", sign: int = 1) -> DerivResult:
    """``dW/dmu`` at ``kappa = (1+m)/2``, ``mu = sign * m/2``."""
    _check_x(x)
    m = _check_nonneg(m)
    sign = _sign(sign)
    s, big = _integer_family_sum(m, x, variant)
    pref = math.exp(-x / 2 + (1 + m) / 2 * math.log(x))
    return DerivResult(sign * pref * s, 64 * _EPS * pref * big, CaseKey.INTEGER_LIMIT,
                       "closed-form:integer-family:" + variant)


def _n_half_parts(n: int, x: float) -> tuple[float, list[float], list[float]]:
    """Common pieces of the ``kappa = n/2, mu = +-(n+1)/2`` reductions."""
    # x^{-n/2} e^{x/2} Gamma(1+n, x) written without e^{x/2}
    lead = x ** (-n / 2) * math.exp(-x / 2) * math.factorial(n) * sp.exp_polynomial(n, x)
    coef = [math.factorial(n) * x ** (n / 2 - k) * math.exp(-x / 2) / math.factorial(n - k) for k in range(n + 1)]
    pair = [_gamma_pair(k, x) - _ell_sum(k, x) for k in range(n + 1)]
    return lead, coef, pair


def dW_dkappa_n_half_family(n: int, x: float) -> DerivResult:
    """``dW/dkappa`` at ``kappa = n/2``, ``mu = +-(n+1)/2``."""
    _check_x(x)
    n = _check_nonneg(n, "n")
    lead, coef, pair = _n_half_parts(n, x)
    parts = [lead * (sp.e1(x).real + math.log(x))]
    parts += [c * (p - sp.harmonic(k)) for k, (c, p) in enumerate(zip(coef, pair))]
    v = math.fsum(parts)
    return DerivResult(v, 64 * _EPS * max(abs(t) for t in parts), CaseKey.UPPER_GAMMA_FAMILY,
                       "closed-form:kappa=n/2,mu=(n+1)/2")


def dW_dmu_n_half_family(n: int, x: float, sign: int = 1) -> DerivResult:
    """``dW/dmu`` at ``kappa = n/2``, ``mu = sign * (n+1)/2``."""
    _check_x(x)
    n = _check_nonneg(n, "n")
    sign = _sign(sign)
    lead, coef, pair = _n_half_parts(n, x)
    parts = [lead * sp.e1(x).real]
    parts += [c * (p + sp.harmonic(k)) for k, (c, p) in enumerate(zip(coef, pair))]
    v = math.fsum(parts)
    return DerivResult(sign * v, 64 * _EPS * max(abs(t) for t in parts), CaseKey.UPPER_GAMMA_FAMILY,
                       "closed-form:kappa=n/2,mu=(n+1)/2")


def _zero_halfint_parts(n: int, x: float) -> tuple[float, list[float], list[float]]:
    kpart = math.sqrt(x / math.pi) * sp.bessel_k(n + 0.5, x / 2)
    e = math.exp(-x / 2)
    coef = [math.factorial(n + k) * x ** (-k) / (math.factorial(k) * math.factorial(n - k)) * e for k in range(n + 1)]
    pair = [_gamma_pair(n + k, x) - _ell_sum(n + k, x) for k in range(n + 1)]
    return kpart, coef, pair


def dW_dkappa_zero_halfint(n: int, x: float) -> DerivResult:
    """``dW/dkappa`` at ``kappa = 0``, ``mu = +-(n + 1/2)``."""
    _check_x(x)
    n = _check_nonneg(n, "n")
    kpart, coef, pair = _zero_halfint_parts(n, x)
    parts = [kpart * (sp.harmonic(n) + sp.e1(x).real + math.log(x))]
    parts += [c * (p - sp.harmonic(n + k)) for k, (c, p) in enumerate(zip(coef, pair))]
    v = math.fsum(parts)
    return DerivResult(v, 64 * _EPS * max(abs(t) for t in parts), CaseKey.KAPPA_ZERO_HALF_INT,
                       "closed-form:kappa=0,mu=n+1/2")


def dW_dmu_zero_halfint(n: int, x: float, sign: int = 1) -> DerivResult:
    """``dW/dmu`` at ``kappa = 0``, ``mu = sign * (n + 1/2)``."""
    _check_x(x)
    n = _check_nonneg(n, "n")
    sign = _sign(sign)
    kpart, coef, pair = _zero_halfint_parts(n, x)
    parts = [kpart * (sp.e1(x).real - sp.harmonic(n))]
    parts += [c * (p + sp.harmonic(n + k)) for k, (c, p) in enumerate(zip(coef, pair))]
    v = math.fsum(parts)
    return DerivResult(sign * v, 64 * _EPS * max(abs(t) for t in parts), CaseKey.KAPPA_ZERO_HALF_INT,
                       "closed-form:kappa=0,mu=n+1/2")


# ---------------------------------------------------------------------------
# d/dmu: Tricomi route and the Bessel line


def dW_dmu_series(kappa: float, mu: float, x: float, ctl: SeriesControl = _SCTL) -> DerivResult:
    """``dW/dmu`` from the Tricomi form ``W = e**(-x/2) x**(mu+1/2) U(a, 1+2mu, x)``.

    Evaluated at ``|mu|`` and reflected, so the result is odd in ``mu``.
    """
    _check_x(x)
    if mu == 0:
        return DerivResult(0.0, 0.0, CaseKey.ODD_ZERO, "odd-zero")
    s = 1.0 if mu > 0 else -1.0
    mu = abs(mu)
    a, b = 0.5 - kappa + mu, 1.0 + 2 * mu
    w = whittaker_w(kappa, mu, x)
    d = hyper.u_param_derivs(a, b, x, ctl)
    pref = math.exp(-x / 2 + (mu + 0.5) * math.log(x))
    t1 = math.log(x) * w.value
    t2 = pref * (d.dU_da + 2 * d.dU_db)
    v = t1 + t2
    err = abs(math.log(x)) * w.abs_err + pref * d.err + 64 * _EPS * max(abs(t1), abs(t2))
    return DerivResult(s * v, err, CaseKey.GENERIC_SERIES, "series:tricomi:" + d.method)


def _fd(f, at: float, h: float | None = None) -> tuple[float, float]:
    """Central 4-point difference with one Richardson step."""
    h = h if h is not None else 1e-3 * max(1.0, abs(at))

    def c4(hh):
        return (8 * (f(at + hh) - f(at - hh)) - (f(at + 2 * hh) - f(at - 2 * hh))) / (12 * hh)

    d1, d2 = c4(h), c4(h / 2)
    return (16 * d2 - d1) / 15, abs(d2 - d1) / 15


def dK_dnu(nu: float, x: float) -> EvalResult:
    """Order derivative of the modified Bessel function ``K_nu(x)``.

    A 3F4/2F3 hypergeometric combination is used for ``2 nu`` away from
    the integers; otherwise a Richardson-extrapolated central difference
    of ``K`` in the order is returned with the flag ``"fd-fallback"``.
    The derivative is odd in ``nu``.
    """
    _check_x(x)
    if nu == 0:
        return EvalResult(0.0, 0.0, "odd-zero")
    if nu < 0:
        r = dK_dnu(-nu, x)
        return EvalResult(-r.value, r.abs_err, r.method, r.flags)
    if abs(2 * nu - round(2 * nu)) < _NEAR_INT_2MU:
        v, err = _fd(lambda s: sp.bessel_k(s, x), nu, 1e-3)
        return EvalResult(v, err + 1e-12 * abs(v), "finite-difference", ("fd-fallback",))
    x2 = x * x
    ip, im = sp.bessel_i(nu, x), sp.bessel_i(-nu, x)
    f34 = hyper.pfq([1.0, 1.0, 1.5], [2.0, 2.0, 2.0 - nu, 2.0 + nu], x2).value
    brace = x2 / (4 * (1 - nu * nu)) * f34 + math.log(x / 2) - sp.digamma(nu) - 1 / (2 * nu)
    pinu = math.pi * nu
    t1 = math.pi / (2 * math.sin(pinu)) * (math.pi * math.cos(pinu) / math.sin(pinu) * ip - (ip + im) * brace)
    f23a = hyper.pfq([nu, 0.5 + nu], [1 + nu, 1 + nu, 1 + 2 * nu], x2).value
    f23b = hyper.pfq([-nu, 0.5 - nu], [1 - nu, 1 - nu, 1 - 2 * nu], x2).value
    ta = im * sp.gamma(-nu) ** 2 * (x / 2) ** (2 * nu) * f23a
    tb = ip * sp.gamma(nu) ** 2 * (x / 2) ** (-2 * nu) * f23b
    v = t1 + 0.25 * (ta - tb)
    big = max(abs(t1), abs(ta), abs(tb))
    return EvalResult(v, 64 * _EPS * big, "hypergeometric")


def dW_dmu_kappa0(mu: float, x: float) -> DerivResult:
    """``dW_{0,mu}/dmu = sqrt(x/pi) dK_mu(x/2)/dmu``."""
    _check_x(x)
    r = dK_dnu(mu, x / 2)
    c = math.sqrt(x / math.pi)
    return DerivResult(c * r.value, c * r.abs_err, CaseKey.KAPPA_ZERO, "closed-form:kappa=0:" + r.method, 0.0, r.flags)


# ---------------------------------------------------------------------------
# dispatch


def _near(a: float, b: float) -> bool:
    return abs(a - b) <= _TOL * max(1.0, abs(a), abs(b))


def _nonneg_int(v: float) -> int | None:
    n = snap_int(v, _TOL)
    return n if n is not None and n >= 0 else None


def closed_form_case(kappa: float, mu: float, wrt: Wrt | str):
    """Return ``(CaseKey, thunk(x))`` for the exact reduction covering ``(kappa, mu)``, or None."""
    wrt = Wrt(wrt)
    am = abs(mu)
    sgn = 1 if mu >= 0 else -1
    m = _nonneg_int(2 * am)
    if wrt is Wrt.MU and am == 0:
        return CaseKey.ODD_ZERO, lambda x: DerivResult(0.0, 0.0, CaseKey.ODD_ZERO, "odd-zero")
    # integer family kappa = (1+m)/2, |mu| = m/2
    if m is not None and _near(kappa, (1 + m) / 2):
        if wrt is Wrt.KAPPA:
            return CaseKey.INTEGER_LIMIT, lambda x: dW_dkappa_integer_family(m, x)
        return CaseKey.INTEGER_LIMIT, lambda x: dW_dmu_integer_family(m, x, sign=sgn)
    # kappa = n/2, |mu| = (n+1)/2
    if m is not None and m >= 1 and _near(kappa, (m - 1) / 2):
        n = m - 1
        if wrt is Wrt.KAPPA:
            return CaseKey.UPPER_GAMMA_FAMILY, lambda x: dW_dkappa_n_half_family(n, x)
        return CaseKey.UPPER_GAMMA_FAMILY, lambda x: dW_dmu_n_half_family(n, x, sign=sgn)
    # kappa = 0, |mu| = n + 1/2
    if m is not None and m % 2 == 1 and kappa == 0:
        n = (m - 1) // 2
        if wrt is Wrt.KAPPA:
            return CaseKey.KAPPA_ZERO_HALF_INT, lambda x: dW_dkappa_zero_halfint(n, x)
        return CaseKey.KAPPA_ZERO_HALF_INT, lambda x: dW_dmu_zero_halfint(n, x, sign=sgn)
    # kappa = n, |mu| = 1/2
    nk = _nonneg_int(kappa)
    if wrt is Wrt.KAPPA and m == 1 and nk is not None and nk >= 1:
        return CaseKey.KAPPA_N_MU_HALF, lambda x: dW_dkappa_n_mu_half(nk, x)
    if m is None and abs(2 * am - round(2 * am)) >= _NEAR_INT_2MU:
        if _near(kappa, am + 0.5):
            if wrt is Wrt.KAPPA:
                return CaseKey.KAPPA_MU_PLUS_HALF, lambda x: dW_dkappa_mu_plus_half(am, x)
            return CaseKey.KAPPA_MU_PLUS_HALF, lambda x: _scale(dW_dmu_mu_plus_half(am, x), sgn)
        if _near(kappa, 0.5 - am):
            if wrt is Wrt.KAPPA:
                return CaseKey.KAPPA_HALF_MINUS_MU, lambda x: dW_dkappa_half_minus_mu(am, x)
            return CaseKey.KAPPA_HALF_MINUS_MU, lambda x: _scale(dW_dmu_half_minus_mu(am, x), sgn)
    if wrt is Wrt.MU and kappa == 0:
        return CaseKey.KAPPA_ZERO, lambda x: dW_dmu_kappa0(mu, x)
    return None


def _scale(r: DerivResult, s: int) -> DerivResult:
    if s == 1:
        return r
    return DerivResult(-r.value, r.err_estimate, r.case_used, r.method, r.imag_residual, r.flags)


def _fd_route(kappa: float, mu: float, x: float, wrt: Wrt) -> DerivResult:
    if wrt is Wrt.KAPPA:
        v, err = _fd(lambda k: whittaker_w(k, mu, x).value, kappa)
    else:
        if mu == 0:
            return DerivResult(0.0, 0.0, CaseKey.ODD_ZERO, "odd-zero")
        v, err = _fd(lambda m: whittaker_w(kappa, m, x).value, mu, 1e-3 * min(1.0, abs(mu)))
    return DerivResult(v, err, CaseKey.FINITE_DIFFERENCE, "finite-difference")


def _integral_route(kappa: float, mu: float, x: float, wrt: Wrt, qctl: QuadratureControl) -> DerivResult:
    from . import logint

    am = abs(mu)
    a = am - kappa + 0.5
    if not a > 0:
        raise DomainError("the integral representation needs |mu| - kappa > -1/2")
    w = whittaker_w(kappa, am, x)
    pref = math.exp(-x / 2 + (am + 0.5) * math.log(x)) * sp.rgamma(a)
    if wrt is Wrt.KAPPA:
        i1 = logint.I1_star(kappa, am, x, route="quadrature", qctl=qctl)
        t1, t2 = sp.digamma(a) * w.value, pref * i1.value
        err = pref * i1.abs_err + abs(sp.digamma(a)) * w.abs_err
        return DerivResult(t1 + t2, err + 64 * _EPS * max(abs(t1), abs(t2)), CaseKey.INTEGRAL_REP, "integral-rep:I1")
    if am == 0:
        return DerivResult(0.0, 0.0, CaseKey.ODD_ZERO, "odd-zero")
    i3 = logint.I3_star(kappa, am, x, route="quadrature", qctl=qctl)
    t1, t2 = (math.log(x) - sp.digamma(a)) * w.value, pref * i3.value
    err = pref * i3.abs_err + abs(math.log(x) - sp.digamma(a)) * w.abs_err
    s = 1.0 if mu > 0 else -1.0
    return DerivResult(s * (t1 + t2), err + 64 * _EPS * max(abs(t1), abs(t2)), CaseKey.INTEGRAL_REP, "integral-rep:I3")


def dW_auto(req: DerivRequest, ctl: SeriesControl = _SCTL, qctl: QuadratureControl = QuadratureControl()) -> DerivResult:
    """Dispatch a derivative request.

    ``Route.AUTO`` tries, in order: an exact reduction for the parameter
    pair, the series route (when ``2mu`` is at least ``1e-4`` from an
    integer for ``kappa``; always for ``mu``), the logarithmic integral
    representation, and finally finite differences of ``W``.
    """
    p = req.point
    kappa, mu, x = float(p.kappa), float(p.mu), float(p.x)
    _check_x(x)
    wrt, route = Wrt(req.wrt), Route(req.route)
    if route is Route.CLOSED_FORM:
        hit = closed_form_case(kappa, mu, wrt)
        if hit is None:
            raise DomainError(f"no closed form for (kappa, mu) = ({kappa}, {mu})")
        return hit[1](x)
    if route is Route.SERIES:
        if wrt is Wrt.KAPPA:
            return dW_dkappa_series(kappa, mu, x, ctl)
        return dW_dmu_series(kappa, mu, x, ctl)
    if route is Route.INTEGRAL_REP:
        return _integral_route(kappa, mu, x, wrt, qctl)
    if route is Route.FINITE_DIFFERENCE:
        return _fd_route(kappa, mu, x, wrt)

    hit = closed_form_case(kappa, mu, wrt)
    if hit is not None:
        return hit[1](x)
    off_lattice = abs(2 * mu - round(2 * mu)) >= _NEAR_INT_2MU
    try:
        if wrt is Wrt.KAPPA and off_lattice:
            return dW_dkappa_series(kappa, mu, x, ctl)
        if wrt is Wrt.MU:
            return dW_dmu_series(kappa, mu, x, ctl)
    except (PoleError, NonConvergence):
        pass
    try:
        return _integral_route(kappa, mu, x, wrt, qctl)
    except (DomainError, NonConvergence):
        pass
    r = _fd_route(kappa, mu, x, wrt)
    return DerivResult(r.value, r.err_estimate, r.case_used, r.method, r.imag_residual, r.flags + ("fd-fallback",))


def dW(kappa: float, mu: float, x: float, wrt: str = "kappa", route: str = "auto") -> DerivResult:
    """Convenience wrapper around :func:`dW_auto`."""
    return dW_auto(DerivRequest(WhittakerPoint(kappa, mu, x), Wrt(wrt), Route(route)))
