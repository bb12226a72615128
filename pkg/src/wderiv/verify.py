"""Verification suites: every check pairs a production route with an independent oracle.

Each suite returns a :class:`VerifyReport`.  A check that raises counts as a
failure; so does any result whose discarded imaginary part exceeds
``REALNESS_TOL`` relative to its value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import derivs, hyper, logint, quad, tables
from . import special as sp
from ._common import QuadratureControl
from .errors import WderivError
from .oracle import ComparisonReport, brute_pfq, compare, fd_param_derivative
from .whittaker import (dwi_dkappa_integral_rep, w_array, whittaker_w, wi_upper, wi_upper_integral_rep)

__all__ = ["VerifyReport", "SUITES", "PUBLIC_SUITES", "REALNESS_TOL", "run_suite", "run_all"]

REALNESS_TOL = 1e-8
_TIGHT = QuadratureControl(target_tol=1e-13, max_level=12)
_XS = (0.5, 2.0, 8.0)


@dataclass
class VerifyReport:
    suite: str
    total: int
    passed: int
    failures: list[ComparisonReport] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def to_dict(self) -> dict:
        return {"suite": self.suite, "total": self.total, "passed": self.passed,
                "failures": [f.to_dict() for f in self.failures]}


def _unwrap(r) -> float:
    """Plain float from a number or a result object; realness breaches raise."""
    if isinstance(r, (int, float)):
        return float(r)
    imag = getattr(r, "imag_residual", 0.0) or 0.0
    v = float(r.value)
    if imag > REALNESS_TOL:
        raise _Unreal(f"imaginary residual {imag:.3g} exceeds {REALNESS_TOL:g}")
    return v


class _Unreal(ArithmeticError):
    pass


def _check(lhs: Callable[[], object], rhs: Callable[[], object], tol: float, ctx: str) -> ComparisonReport:
    try:
        return compare(_unwrap(lhs()), _unwrap(rhs()), tol, ctx)
    except (WderivError, ArithmeticError, ValueError) as exc:
        return ComparisonReport(math.nan, math.nan, math.inf, math.inf, tol, False, f"{ctx}: {exc}")


def _report(name: str, reports: Iterable[ComparisonReport]) -> VerifyReport:
    reports = list(reports)
    bad = [r for r in reports if not r.passed]
    return VerifyReport(name, len(reports), len(reports) - len(bad), bad)


def _w_tight(kappa: float, mu: float, x: float) -> float:
    return whittaker_w(kappa, mu, x, qctl=_TIGHT).value


def _fd_w(kappa: float, mu: float, x: float, wrt: str) -> float:
    return tables.fd_reference("dkappa" if wrt == "kappa" else "dmu", kappa, mu, x)


# ---------------------------------------------------------------------------
# suites


def symmetry(tol: float | None = None) -> list[ComparisonReport]:
    """Parity in ``mu``: W even (negative ``mu`` through the Kummer-reflected Tricomi form), dW/dkappa even, dW/dmu odd."""
    tol = 1e-10 if tol is None else tol
    out = []
    for k in (-0.7, 0.0, 0.3, 1.2):
        for m in (0.15, 0.35, 0.8, 1.3):
            for x in (0.5, 2.0, 8.0):
                ctx = f"(kappa={k}, mu={m}, x={x})"

                def w_neg(k=k, m=m, x=x):
                    # e^{-x/2} x^{1/2-mu} U(1/2-mu-kappa, 1-2mu, x)
                    u = hyper.tricomi_u(0.5 - m - k, 1.0 - 2 * m, x)
                    return math.exp(-x / 2) * x ** (0.5 - m) * u.value

                out.append(_check(lambda k=k, m=m, x=x: whittaker_w(k, m, x), w_neg, tol, "W even " + ctx))
                out.append(_check(lambda k=k, m=m, x=x: derivs.dW(k, m, x, "kappa"),
                                  lambda k=k, m=m, x=x: derivs.dW(k, -m, x, "kappa"), tol, "dW/dkappa even " + ctx))
                out.append(_check(lambda k=k, m=m, x=x: derivs.dW(k, m, x, "mu"),
                                  lambda k=k, m=m, x=x: -derivs.dW(k, -m, x, "mu").value, tol, "dW/dmu odd " + ctx))
    return out


def routes(tol: float | None = None) -> list[ComparisonReport]:
    """Pairwise agreement of every admissible evaluation route for W."""
    tol = 1e-8 if tol is None else tol
    pts = [(k, m, x) for k in (-0.8, -0.3, 0.1) for m in (0.15, 0.35) for x in (0.5, 2.0, 6.0)]
    pts += [(k, m, x) for k in (0.6, 1.3) for m in (0.4, 0.9) for x in (0.5, 2.0, 6.0)]
    out = []
    for k, m, x in pts:
        cands: dict[str, Callable] = {
            "combination": lambda k=k, m=m, x=x: whittaker_w(k, m, x, method="combination"),
            "tricomi": lambda k=k, m=m, x=x: whittaker_w(k, m, x, method="tricomi"),
        }
        if 0.5 + m - k > 0:
            cands["quadrature"] = lambda k=k, m=m, x=x: whittaker_w(k, m, x, method="quadrature", qctl=_TIGHT)
        if 0.5 - m - k > 0:
            cands["bessel"] = lambda k=k, m=m, x=x: logint.bessel_rep_W(k, m, x, _TIGHT)
        names = list(cands)
        for i in range(len(names)):
            for j in range(i + 1, len(names)):
                out.append(_check(cands[names[i]], cands[names[j]], tol,
                                  f"{names[i]} vs {names[j]} (kappa={k}, mu={m}, x={x})"))
    return out


def integrals(tol: float | None = None) -> list[ComparisonReport]:
    """Logarithmic integrals: closed forms and identities against quadrature."""
    out = []
    star_pts = [(0.1, 0.3, 1.0), (-0.4, 0.2, 2.0), (0.3, 0.7, 0.5), (0.2, 0.35, 5.0), (-1.1, 1.3, 3.0)]
    t8 = 1e-8 if tol is None else tol
    for k, m, x in star_pts:
        ctx = f"(kappa={k}, mu={m}, x={x})"
        out.append(_check(lambda k=k, m=m, x=x: logint.I1_star(k, m, x),
                          lambda k=k, m=m, x=x: logint.I1_star(k, m, x, "quadrature", _TIGHT), t8, "I1* " + ctx))
        out.append(_check(lambda k=k, m=m, x=x: logint.I3_star(k, m, x),
                          lambda k=k, m=m, x=x: logint.I3_star(k, m, x, "quadrature", _TIGHT), t8, "I3* " + ctx))
        out.append(_check(lambda k=k, m=m, x=x: logint.I2_star(k, m, x),
                          lambda k=k, m=m, x=x: logint.I2_star(k, m, x, "quadrature", _TIGHT), t8, "I2* " + ctx))
        out.append(_check(lambda k=k, m=m, x=x: logint.I4_star(k, m, x),
                          lambda k=k, m=m, x=x: logint.I4_star(k, m, x, "quadrature", _TIGHT), t8, "I4* " + ctx))
    for n in (0, 1, 2):
        for x in (0.7, 3.0):
            ctx = f"(n={n}, x={x})"
            out.append(_check(lambda n=n, x=x: logint.I1_star_n_family(n, x),
                              lambda n=n, x=x: logint.I1_star(n / 2, (n + 1) / 2, x, "quadrature", _TIGHT), t8,
                              "I1* kappa=n/2 family " + ctx))
            out.append(_check(lambda n=n, x=x: logint.I3_star_n_family(n, x),
                              lambda n=n, x=x: logint.I3_star(n / 2, (n + 1) / 2, x, "quadrature", _TIGHT), t8,
                              "I3* kappa=n/2 family " + ctx))
            out.append(_check(lambda n=n, x=x: logint.I1_star_zero_halfint(n, x),
                              lambda n=n, x=x: logint.I1_star(0.0, n + 0.5, x, "quadrature", _TIGHT), t8,
                              "I1* kappa=0 family " + ctx))
            out.append(_check(lambda n=n, x=x: logint.I3_star_zero_halfint(n, x),
                              lambda n=n, x=x: logint.I3_star(0.0, n + 0.5, x, "quadrature", _TIGHT), t8,
                              "I3* kappa=0 family " + ctx))
    th = 1e-7 if tol is None else tol
    for k, m, x in [(-0.3, 0.2, 1.0), (0.0, 0.3, 2.0), (-1.0, 0.4, 0.7), (0.1, 0.15, 4.0)]:
        out.append(_check(lambda k=k, m=m, x=x: logint.H_bessel(k, m, x, "quadrature", _TIGHT),
                          lambda k=k, m=m, x=x: logint.H_bessel(k, m, x, "via_i1", _TIGHT), th,
                          f"H two routes (kappa={k}, mu={m}, x={x})"))
    tl = 1e-9 if tol is None else tol
    for s in (1, -1):
        for nu in (-0.5, 0.0, 0.7, 2.0):
            for x in (0.5, 3.0):
                out.append(_check(lambda s=s, nu=nu, x=x: logint.log_laplace_I(s, nu, x),
                                  lambda s=s, nu=nu, x=x: logint.log_laplace_I(s, nu, x, "quadrature", _TIGHT), tl,
                                  f"log-Laplace sign={s:+d} (nu={nu}, x={x})"))
    return out


def hypergeometric(tol: float | None = None) -> list[ComparisonReport]:
    """Equal-parameter G1 identity, Kummer-type G1 transform, finite 2F2 reduction, brute-force pFq."""
    out = []
    ta = 1e-10 if tol is None else tol
    for a in (0.5, 1.0, 2.0, 3.5):
        for x in (-2.0, -0.5, 0.5, 2.0):
            out.append(_check(lambda a=a, x=x: hyper.g1(a, a, x).value, lambda a=a, x=x: hyper.g1_equal_params(a, x),
                              ta, f"G1(a;a;x) (a={a}, x={x})"))
    for a, b, x in [(0.5, 1.25, 1.0), (2.0, 3.0, -2.0), (1.0, 1.0, 0.5), (0.3, 2.7, 4.5), (-0.4, 1.6, -5.0)]:
        out.append(_check(lambda a=a, b=b, x=x: hyper.g1_transform_check(a, b, x), lambda: 0.0, ta,
                          f"G1 transform residual (a={a}, b={b}, x={x})"))
    tb = 1e-12 if tol is None else tol
    for m in range(9):
        for x in (-3.0, -0.5, 0.5, 3.0):
            out.append(_check(lambda m=m, x=x: hyper.reduce_2f2_m(m, x),
                              lambda m=m, x=x: brute_pfq([1.0, 1.0], [2.0, 2.0 + m], x).value, tb,
                              f"2F2 reduction (m={m}, x={x})"))
    for up, lo, z in [([0.5], [1.5], 2.0), ([1.0, 1.0], [2.0, 2.0], -1.0), ([0.3, 1.7], [2.2, 0.6, 1.1], 0.9)]:
        out.append(_check(lambda up=up, lo=lo, z=z: hyper.pfq(up, lo, z).value,
                          lambda up=up, lo=lo, z=z: brute_pfq(up, lo, z).value, tb, f"pFq vs brute {up};{lo};{z}"))
    return out


def _closed_form_cases() -> list[tuple[str, float, float, str, Callable[[float], object]]]:
    c: list = []
    for mu in (0.3, 1.1, -0.35):
        c.append(("dkappa kappa=mu+1/2", mu + 0.5, mu, "kappa", lambda x, mu=mu: derivs.dW_dkappa_mu_plus_half(mu, x)))
        c.append(("dmu kappa=mu+1/2", mu + 0.5, mu, "mu", lambda x, mu=mu: derivs.dW_dmu_mu_plus_half(mu, x)))
    for n in (1, 2, 3):
        c.append(("dkappa kappa=n,mu=1/2", n, 0.5, "kappa", lambda x, n=n: derivs.dW_dkappa_n_mu_half(n, x)))
    for mu in (0.3, 1.2):
        c.append(("dkappa kappa=1/2-mu", 0.5 - mu, mu, "kappa", lambda x, mu=mu: derivs.dW_dkappa_half_minus_mu(mu, x)))
        c.append(("dmu kappa=1/2-mu", 0.5 - mu, mu, "mu", lambda x, mu=mu: derivs.dW_dmu_half_minus_mu(mu, x)))
    for m in range(4):
        c.append(("dkappa kappa=(1+m)/2", (1 + m) / 2, m / 2, "kappa",
                  lambda x, m=m: derivs.dW_dkappa_integer_family(m, x)))
        for s in ((1, -1) if m else (1,)):
            c.append(("dmu kappa=(1+m)/2", (1 + m) / 2, s * m / 2, "mu",
                      lambda x, m=m, s=s: derivs.dW_dmu_integer_family(m, x, sign=s)))
        c.append(("dkappa kappa=n/2,mu=(n+1)/2", m / 2, (m + 1) / 2, "kappa",
                  lambda x, n=m: derivs.dW_dkappa_n_half_family(n, x)))
        for s in (1, -1):
            c.append(("dmu kappa=n/2,mu=(n+1)/2", m / 2, s * (m + 1) / 2, "mu",
                      lambda x, n=m, s=s: derivs.dW_dmu_n_half_family(n, x, sign=s)))
    for n in range(3):
        c.append(("dkappa kappa=0,mu=n+1/2", 0.0, n + 0.5, "kappa", lambda x, n=n: derivs.dW_dkappa_zero_halfint(n, x)))
        for s in (1, -1):
            c.append(("dmu kappa=0,mu=n+1/2", 0.0, s * (n + 0.5), "mu",
                      lambda x, n=n, s=s: derivs.dW_dmu_zero_halfint(n, x, sign=s)))
    for mu in (0.3, 0.75, 1.4, -0.6):
        c.append(("dmu kappa=0", 0.0, mu, "mu", lambda x, mu=mu: derivs.dW_dmu_kappa0(mu, x)))
    return c


def closed_forms(tol: float | None = None) -> list[ComparisonReport]:
    """Every exact derivative reduction against finite differences of W."""
    tol = 1e-6 if tol is None else tol
    out = []
    for label, k, m, wrt, fn in _closed_form_cases():
        for x in _XS:
            out.append(_check(lambda fn=fn, x=x: fn(x), lambda k=k, m=m, x=x, wrt=wrt: _fd_w(k, m, x, wrt), tol,
                              f"{label} (kappa={k}, mu={m}, x={x})"))
    return out


def variants(tol: float | None = None) -> list[ComparisonReport]:
    """Alternative written forms of the same reduction agree."""
    out = []
    t12 = 1e-12 if tol is None else tol
    for m in range(7):
        for x in (0.5, 2.0, 8.0):
            out.append(_check(lambda m=m, x=x: derivs.dW_dkappa_integer_family(m, x, "limit"),
                              lambda m=m, x=x: derivs.dW_dkappa_integer_family(m, x, "finite"), t12,
                              f"dkappa integer family forms (m={m}, x={x})"))
            out.append(_check(lambda m=m, x=x: derivs.dW_dmu_integer_family(m, x, "limit"),
                              lambda m=m, x=x: derivs.dW_dmu_integer_family(m, x, "finite"), t12,
                              f"dmu integer family forms (m={m}, x={x})"))
    t10 = 1e-10 if tol is None else tol
    for mu in (0.3, 0.7, 1.2, 1.45):
        for x in (0.5, 2.0, 8.0):
            out.append(_check(lambda mu=mu, x=x: derivs.dW_dmu_half_minus_mu(mu, x, "primary"),
                              lambda mu=mu, x=x: derivs.dW_dmu_half_minus_mu(mu, x, "alternative"), t10,
                              f"dmu kappa=1/2-mu forms (mu={mu}, x={x})"))
    return out


def sum_rules(tol: float | None = None) -> list[ComparisonReport]:
    """``dW/dkappa + dW/dmu`` equals ``e^{-x/2} x^{kappa} ln x`` on the two lattices where both reduce."""
    tol = 1e-10 if tol is None else tol
    out = []
    for mu in (0.2, 0.7):
        for x in _XS:
            out.append(_check(
                lambda mu=mu, x=x: derivs.dW_dkappa_mu_plus_half(mu, x).value + derivs.dW_dmu_mu_plus_half(mu, x).value,
                lambda mu=mu, x=x: math.exp(-x / 2) * x ** (0.5 + mu) * math.log(x), tol,
                f"sum rule kappa=mu+1/2 (mu={mu}, x={x})"))
    for m in range(4):
        for x in _XS:
            out.append(_check(
                lambda m=m, x=x: derivs.dW_dkappa_integer_family(m, x).value + derivs.dW_dmu_integer_family(m, x).value,
                lambda m=m, x=x: math.exp(-x / 2) * x ** ((1 + m) / 2) * math.log(x), tol,
                f"sum rule kappa=(1+m)/2 (m={m}, x={x})"))
    return out


def table_rows(tol: float | None = None) -> list[ComparisonReport]:
    """Every tabulated row (corrected where needed) against the FD oracle."""
    tol = 1e-6 if tol is None else tol
    out = []
    for tid in tables.TABLE_IDS:
        for row in tables.TABLES[tid]:
            for x in (0.5, 1.0, 2.0, 4.0, 8.0):
                ctx = f"{tid} (kappa={row.kappa}, mu={row.mu}, x={x}) {row.kind}"
                try:
                    rec = tables.evaluate_row(row, x)
                    out.append(compare(rec.residual, 0.0, tol, ctx))
                except (WderivError, ArithmeticError, ValueError) as exc:
                    out.append(ComparisonReport(math.nan, math.nan, math.inf, math.inf, tol, False, f"{ctx}: {exc}"))
    return out


def wi(tol: float | None = None) -> list[ComparisonReport]:
    """The integral representation of ``wi`` and of its kappa-derivative."""
    out = []
    t7 = 1e-7 if tol is None else tol
    pts = [(0.1, 0.3, 1.0), (-0.4, 0.25, 2.0), (0.6, 0.45, 0.5), (-1.2, 0.8, 3.0), (0.35, 0.1, 5.0), (0.0, 0.7, 1.5)]
    for k, m, x in pts:
        def direct(k=k, m=m, x=x):
            return quad.tail(lambda t: w_array(k, m, t) / t, x, _TIGHT).value

        out.append(_check(lambda k=k, m=m, x=x: wi_upper_integral_rep(k, m, x, _TIGHT), direct, t7,
                          f"wi integral rep (kappa={k}, mu={m}, x={x})"))
    t6 = 1e-6 if tol is None else tol
    for k, m, x in pts[:4]:
        def fd(k=k, m=m, x=x):
            return fd_param_derivative(lambda kk: wi_upper(kk, m, x, _TIGHT).value, k).value

        out.append(_check(lambda k=k, m=m, x=x: dwi_dkappa_integral_rep(k, m, x, _TIGHT), fd, t6,
                          f"d wi/d kappa vs FD (kappa={k}, mu={m}, x={x})"))
    return out


def realness(tol: float | None = None) -> list[ComparisonReport]:
    """Imaginary parts discarded by complex-intermediate closed forms stay negligible."""
    tol = REALNESS_TOL if tol is None else tol
    out = []

    def imag_of(fn):
        def g():
            r = fn()
            return r.imag_residual
        return g

    for mu in (0.2, 0.7, 1.35, -0.4):
        for x in _XS:
            out.append(_check(imag_of(lambda mu=mu, x=x: derivs.dW_dkappa_mu_plus_half(mu, x)), lambda: 0.0, tol,
                              f"imag dkappa kappa=mu+1/2 (mu={mu}, x={x})"))
            out.append(_check(imag_of(lambda mu=mu, x=x: derivs.dW_dmu_mu_plus_half(mu, x)), lambda: 0.0, tol,
                              f"imag dmu kappa=mu+1/2 (mu={mu}, x={x})"))
    for mu in (0.3, 1.2):
        for x in _XS:
            out.append(_check(imag_of(lambda mu=mu, x=x: derivs.dW_dkappa_half_minus_mu(mu, x)), lambda: 0.0, tol,
                              f"imag dkappa kappa=1/2-mu (mu={mu}, x={x})"))
    for s in (1, -1):
        for nu in (-0.5, 0.7):
            for x in (0.5, 3.0):
                out.append(_check(imag_of(lambda s=s, nu=nu, x=x: logint.log_laplace_I(s, nu, x)), lambda: 0.0, tol,
                                  f"imag log-Laplace (sign={s:+d}, nu={nu}, x={x})"))
    for k, m in [(0.2, 0.3), (-0.6, 1.1), (1.4, 0.45)]:
        for wrt in ("kappa", "mu"):
            for x in _XS:
                out.append(_check(imag_of(lambda k=k, m=m, x=x, wrt=wrt: derivs.dW(k, m, x, wrt)), lambda: 0.0, tol,
                                  f"imag dW/d{wrt} (kappa={k}, mu={m}, x={x})"))
    # complex-arithmetic table rows; evaluate_row raises on a breach
    for tid in ("T1", "T2A"):
        for row in tables.TABLES[tid]:
            for x in _XS:
                def img(row=row, x=x):
                    fn = row.corrected or row.expr
                    v = complex(fn(x))
                    return abs(v.imag) / max(1.0, abs(v.real))
                out.append(_check(img, lambda: 0.0, tol, f"imag {tid} (kappa={row.kappa}, mu={row.mu}, x={x})"))
    return out


SUITES: dict[str, Callable[[float | None], list[ComparisonReport]]] = {
    "symmetry": symmetry,
    "routes": routes,
    "integrals": integrals,
    "hypergeometric": hypergeometric,
    "tables": table_rows,
    "closed-forms": closed_forms,
    "variants": variants,
    "sum-rules": sum_rules,
    "realness": realness,
    "wi": wi,
}
PUBLIC_SUITES = ("all",) + tuple(SUITES)


def run_suite(name: str, tol: float | None = None) -> VerifyReport:
    """Run one named suite; ``tol`` overrides every tolerance inside it."""
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; expected one of {', '.join(PUBLIC_SUITES)}")
    return _report(name, SUITES[name](tol))


def run_all(tol: float | None = None) -> list[VerifyReport]:
    return [run_suite(n, tol) for n in SUITES]
