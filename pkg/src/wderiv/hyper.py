"""Hypergeometric series, their first-parameter derivatives, and Tricomi U.

``g1(a, b, x)`` is the derivative of ``1F1(a; b; x)`` with respect to the
numerator parameter ``a`` with the ``n = 0`` term dropped, and ``h1`` the
derivative with respect to the denominator parameter ``b``.  Both are summed
from recurrences on the full series terms, so no division by ``a + j`` ever
happens and poles of the numerator parameter are harmless.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from . import special as sp
from ._common import EvalResult, SeriesControl, SeriesResult, nonpos_int, snap_int
from .errors import DomainError, NonConvergence, PoleError

__all__ = [
    "pfq",
    "hyp1f1",
    "g1",
    "h1",
    "tricomi_u",
    "u_param_derivs",
    "UDerivs",
    "reduce_2f2_m",
    "g1_equal_params",
    "g1_transform_check",
]

_DEFAULT = SeriesControl()


def _check_lower(lower: Sequence[float]) -> None:
    for b in lower:
        if nonpos_int(b) is not None and float(b) == round(b):
            raise PoleError(f"denominator parameter {b} is a non-positive integer")


class _Stopper:
    """Three-consecutive-small-terms rule shared by every series here."""

    def __init__(self, ctl: SeriesControl):
        self.ctl = ctl
        self.small = 0
        self.prev = 0.0
        self.last = 0.0

    def done(self, term_mag: float, sum_mag: float) -> bool:
        self.prev, self.last = self.last, term_mag
        if term_mag <= self.ctl.rel_tol * sum_mag or term_mag <= self.ctl.abs_floor:
            self.small += 1
        else:
            self.small = 0
        return self.small >= 3

    def tail(self) -> float:
        if self.prev > 0 and self.last < self.prev:
            r = self.last / self.prev
            return self.last * r / (1.0 - r)
        return self.last


def pfq(upper: Sequence[float], lower: Sequence[float], z, ctl: SeriesControl = _DEFAULT) -> SeriesResult:
    """Generalised hypergeometric series by term recurrence.

    Parameters
    ----------
    upper, lower
        Numerator and denominator parameters.  Denominators must avoid the
        non-positive integers.
    z
        Real or complex argument.  For ``p == q + 1`` the series needs ``|z| < 1``.
    ctl
        Stopping rule and term budget.

    Raises
    ------
    PoleError
        A denominator parameter is a non-positive integer.
    DomainError
        ``p > q + 1`` or ``p == q + 1`` with ``|z| >= 1``.
    NonConvergence
        ``ctl.max_terms`` terms were summed without meeting the tolerance.
    """
    upper = [float(a) for a in upper]
    lower = [float(b) for b in lower]
    _check_lower(lower)
    p, q = len(upper), len(lower)
    if p > q + 1 or (p == q + 1 and abs(z) >= 1):
        raise DomainError("hypergeometric series diverges for these parameters")
    if isinstance(z, complex) and z.imag == 0.0:
        z = z.real
    term = 1.0 if not isinstance(z, complex) else 1.0 + 0.0j
    total = term
    stop = _Stopper(ctl)
    for n in range(ctl.max_terms):
        num = 1.0
        for a in upper:
            num *= a + n
        den = float(n + 1)
        for b in lower:
            den *= b + n
        term = term * num / den * z
        total += term
        if stop.done(abs(term), abs(total)):
            return SeriesResult(total, n + 2, stop.tail())
    raise NonConvergence(f"pFq did not converge in {ctl.max_terms} terms")


def hyp1f1(a: float, b: float, x, ctl: SeriesControl = _DEFAULT):
    """Kummer's function; for real ``x < 0`` it sums ``e^x 1F1(b-a; b; -x)``, whose terms do not alternate."""
    if isinstance(x, (int, float)) and x < 0 and not (a <= 0 and float(a).is_integer()):
        return math.exp(x) * pfq([b - a], [b], -x, ctl).value
    return pfq([a], [b], x, ctl).value


def g1(a: float, b: float, x, ctl: SeriesControl = _DEFAULT) -> SeriesResult:
    """``d/da 1F1(a; b; x)`` as ``sum_{n>=1} d(a)_n/da * x**n / ((b)_n n!)``."""
    _check_lower([b])
    q = 1.0  # (a)_n x^n / ((b)_n n!)
    t = 0.0  # d(a)_n/da x^n / ((b)_n n!)
    total = 0.0
    stop = _Stopper(ctl)
    for n in range(ctl.max_terms):
        f = x / ((b + n) * (n + 1))
        t, q = (t * (a + n) + q) * f, q * (a + n) * f
        total += t
        if stop.done(abs(t), abs(total)):
            return SeriesResult(total, n + 1, stop.tail())
    raise NonConvergence(f"G1 series did not converge in {ctl.max_terms} terms")


def h1(a: float, b: float, x, ctl: SeriesControl = _DEFAULT) -> SeriesResult:
    """``d/db 1F1(a; b; x)``."""
    _check_lower([b])
    q = 1.0
    s = 0.0
    total = 0.0
    stop = _Stopper(ctl)
    for n in range(ctl.max_terms):
        f = (a + n) * x / ((b + n) * (n + 1))
        s, q = (s - q / (b + n)) * f, q * f
        total += s
        if stop.done(abs(s), abs(total)):
            return SeriesResult(total, n + 1, stop.tail())
    raise NonConvergence(f"H1 series did not converge in {ctl.max_terms} terms")


# ---------------------------------------------------------------------------
# Tricomi U

_U_EPS = 1e-3


def _u_two_term(a: float, b: float, x: float, ctl: SeriesControl) -> tuple[float, float]:
    """Two-term combination; returns (U, largest term magnitude)."""
    t1 = sp.gamma(1.0 - b) * sp.rgamma(a - b + 1.0) * pfq([a], [b], x, ctl).value
    t2 = sp.gamma(b - 1.0) * sp.rgamma(a) * x ** (1.0 - b) * pfq([a - b + 1.0], [2.0 - b], x, ctl).value
    return t1 + t2, max(abs(t1), abs(t2))


def tricomi_u(a: float, b: float, x: float, ctl: SeriesControl = _DEFAULT) -> EvalResult:
    """Confluent hypergeometric function of the second kind.

    For integer ``b`` the two-term formula is averaged at ``b +- eps`` and
    ``b +- 2 eps`` and combined by one Richardson step.  Whenever the two
    terms cancel by more than four digits, or the limit estimate is poor,
    the Laplace-integral quadrature is used instead and the result is
    flagged ``"quadrature-fallback"``.
    """
    if not x > 0:
        raise DomainError("tricomi_u needs x > 0")
    flags: list[str] = []
    if snap_int(b, 1e-9) is None:
        u, big = _u_two_term(a, b, x, ctl)
        err = 4 * sp._EPS * big
        method = "two-term"
    else:
        bi = float(round(b))

        def avg(e):
            up, big_up = _u_two_term(a, bi + e, x, ctl)
            dn, big_dn = _u_two_term(a, bi - e, x, ctl)
            return 0.5 * (up + dn), max(big_up, big_dn)

        f1, big = avg(_U_EPS)
        f2, _ = avg(2 * _U_EPS)
        u = (4 * f1 - f2) / 3.0
        err = abs(f1 - f2) / 3.0 + sp._EPS * big / _U_EPS
        method = "two-term-limit"
        flags.append("integer-b-limit")
    if big > 1e4 * max(abs(u), 1e-300) or err > 1e-10 * abs(u):
        from .quad import laplace_u

        q = laplace_u(a, b, x)
        return EvalResult(q.value, q.abs_err, q.method, tuple(flags) + ("cancellation", "quadrature-fallback"))
    return EvalResult(u, err, method, tuple(flags))


@dataclass(frozen=True)
class UDerivs:
    dU_da: float
    dU_db: float
    err: float
    method: str


def u_param_derivs(a: float, b: float, x: float, ctl: SeriesControl = _DEFAULT, method: str = "auto") -> UDerivs:
    """Partial derivatives of Tricomi ``U(a, b, x)`` in ``a`` and ``b``.

    Methods:

    * ``"analytic"``: term-by-term derivative of the two-term combination
      (needs ``b`` away from the integers);
    * ``"analytic_limit"``: the analytic form averaged symmetrically at
      ``b +- d`` and ``b +- 2d`` with one Richardson step;
    * ``"quadrature"``: the Laplace integral differentiated under the
      integral sign (needs ``a > 0``);
    * ``"fd"``: central differences of :func:`tricomi_u`.

    ``"auto"`` uses ``"analytic"`` when ``b`` is at least ``1e-3`` from an
    integer, else quadrature for ``a > 0`` and the averaged limit otherwise.
    """
    if not x > 0:
        raise DomainError("u_param_derivs needs x > 0")
    near_int = abs(b - round(b)) < 1e-3
    if method == "auto":
        method = "limit" if near_int else "analytic"
    if method == "analytic":
        if snap_int(b, 1e-9) is not None:
            raise PoleError("analytic U derivatives need non-integer b")
        return _u_derivs_analytic(a, b, x, ctl)
    if method == "limit":
        if a > 0:
            return _u_derivs_quad(a, b, x)
        return _u_derivs_limit(a, b, x, ctl)
    if method == "quadrature":
        return _u_derivs_quad(a, b, x)
    if method == "analytic_limit":
        return _u_derivs_limit(a, b, x, ctl)
    if method == "fd":
        return _u_derivs_fd(a, b, x, ctl)
    raise DomainError(f"unknown method {method!r}")


def _u_derivs_analytic(a: float, b: float, x: float, ctl: SeriesControl) -> UDerivs:
    c = a - b + 1.0
    m1 = pfq([a], [b], x, ctl).value
    m2 = pfq([c], [2.0 - b], x, ctl).value
    g_1 = g1(a, b, x, ctl).value
    h_1 = h1(a, b, x, ctl).value
    g_2 = g1(c, 2.0 - b, x, ctl).value
    h_2 = h1(c, 2.0 - b, x, ctl).value
    ga, gb = sp.gamma(1.0 - b), sp.gamma(b - 1.0)
    rc, ra = sp.rgamma(c), sp.rgamma(a)
    rpc, rpa = sp.rgamma_psi(c), sp.rgamma_psi(a)
    pw = x ** (1.0 - b)
    psi1b = sp.digamma(1.0 - b)
    psib1 = sp.digamma(b - 1.0)
    lx = math.log(x)

    # T1 = Gamma(1-b) rGamma(c) M(a,b,x);  T2 = Gamma(b-1) rGamma(a) x^(1-b) M(c,2-b,x)
    dT1_da = ga * (-rpc * m1 + rc * g_1)
    dT2_da = gb * pw * (-rpa * m2 + ra * g_2)
    dT1_db = ga * (-psi1b * rc * m1 + rpc * m1 + rc * h_1)
    dT2_db = gb * pw * (ra * m2 * (psib1 - lx) - ra * (g_2 + h_2))
    big = max(abs(ga * rc * m1), abs(gb * ra * pw * m2), 1.0)
    return UDerivs(dT1_da + dT2_da, dT1_db + dT2_db, 64 * sp._EPS * big, "analytic")


_U_DELTA = 4e-3


def _u_derivs_limit(a: float, b: float, x: float, ctl: SeriesControl) -> UDerivs:
    """Analytic derivatives averaged at ``b +- d`` and ``b +- 2d``, then one Richardson step."""

    def avg(d):
        up = _u_derivs_analytic(a, b + d, x, ctl)
        dn = _u_derivs_analytic(a, b - d, x, ctl)
        return 0.5 * (up.dU_da + dn.dU_da), 0.5 * (up.dU_db + dn.dU_db), max(up.err, dn.err)

    a1, b1, _ = avg(_U_DELTA)
    a2, b2, _ = avg(2 * _U_DELTA)
    a4, b4, _ = avg(4 * _U_DELTA)
    da, db = (4 * a1 - a2) / 3, (4 * b1 - b2) / 3
    # the coarser extrapolation has 16x the leading error
    err = (abs(da - (4 * a2 - a4) / 3) + abs(db - (4 * b2 - b4) / 3)) / 15
    return UDerivs(da, db, err, "analytic-limit")


def _u_derivs_quad(a: float, b: float, x: float) -> UDerivs:
    """Differentiate the Laplace integral of ``U`` under the integral sign (needs ``a > 0``)."""
    if not a > 0:
        raise DomainError("the integral form of the U derivatives needs a > 0")
    import numpy as np

    from ._common import QuadratureControl
    from .quad import half_line

    c = b - a - 1.0
    split = min(1.0, max(0.05, a / x))
    qctl = QuadratureControl(1e-13, 12, split)

    def base(t):
        return np.exp(-x * t + (a - 1.0) * np.log(t) + c * np.log1p(t))

    ib = half_line(lambda t: base(t) * np.log1p(t), qctl, a - 1.0)
    ia = half_line(lambda t: -base(t) * np.log1p(1.0 / t), qctl, a - 1.0)
    u = half_line(base, qctl, a - 1.0)
    r = sp.rgamma(a)
    da = r * (ia.value - sp.digamma(a) * u.value)
    db = r * ib.value
    err = abs(r) * (ia.abs_err + ib.abs_err + abs(sp.digamma(a)) * u.abs_err)
    return UDerivs(da, db, err, "quadrature")


def _u_derivs_fd(a: float, b: float, x: float, ctl: SeriesControl) -> UDerivs:
    def d(f, p):
        h = 1e-4 * max(1.0, abs(p))
        d1 = (8 * (f(p + h) - f(p - h)) - (f(p + 2 * h) - f(p - 2 * h))) / (12 * h)
        h2 = h / 2
        d2 = (8 * (f(p + h2) - f(p - h2)) - (f(p + 2 * h2) - f(p - 2 * h2))) / (12 * h2)
        return (16 * d2 - d1) / 15, abs(d2 - d1)

    da, ea = d(lambda s: tricomi_u(s, b, x, ctl).value, a)
    db, eb = d(lambda s: tricomi_u(a, s, x, ctl).value, b)
    return UDerivs(da, db, ea + eb, "finite-difference")


# ---------------------------------------------------------------------------
# closed-form reductions


def reduce_2f2_m(m: int, x: float) -> float:
    """``2F2(1, 1; 2, 2+m; x)`` for integer ``m >= 0`` in finite terms.

    ``(m+1)/x * {H_m - Ein(-x) + sum_{k=1}^m C(m,k) x**(-k) gamma(k, -x)}``;
    the value ``1`` is returned at ``x = 0``.
    """
    if m < 0 or int(m) != m:
        raise DomainError("reduce_2f2_m needs an integer m >= 0")
    if x == 0:
        return 1.0
    parts = [sp.harmonic(m), -sp.ein(-x)]
    for k in range(1, m + 1):
        parts.append(math.comb(m, k) * x ** (-k) * sp.lower_gamma(k, -x).real)
    return (m + 1) / x * math.fsum(parts)


def g1_equal_params(a: float, x: float, ctl: SeriesControl = _DEFAULT) -> float:
    """``G1`` with equal parameters, ``(x e**x / a) 2F2(1, 1; a+1, 2; -x)``."""
    return x * math.exp(x) / a * pfq([1.0, 1.0], [a + 1.0, 2.0], -x, ctl).value


def g1_transform_check(a: float, b: float, x: float, ctl: SeriesControl = _DEFAULT) -> float:
    """Residual of the Kummer-type identity ``G1(a; b; x) = -e**x G1(b-a; b; -x)``."""
    lhs = g1(a, b, x, ctl).value
    rhs = -math.exp(x) * g1(b - a, b, -x, ctl).value
    return abs(lhs - rhs)
