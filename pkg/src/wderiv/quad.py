"""Double-exponential quadrature on half-lines and finite intervals.

``(0, split)`` is handled by tanh-sinh and ``(split, inf)`` by exp-sinh.
Node tables are built once per level and cached.  Each level halves the
step; the level-to-level difference is the error estimate.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.special import expit, gammaln

from ._common import EvalResult, QuadratureControl
from .errors import DivergentIntegral, QuadratureFailure

__all__ = ["de_integrate", "half_line", "finite", "laplace_u"]

_TS_UMAX = 6.2
_ES_ULO = 4.6
_ES_UHI = 4.2
_MIN_LEVEL = 3


@lru_cache(maxsize=64)
def _tanh_sinh(level: int) -> tuple[np.ndarray, np.ndarray]:
    """New unit-interval nodes at ``level``: returns (t, weight) for (0, 1)."""
    h = 2.0**-level
    k = _new_indices(level, _TS_UMAX, _TS_UMAX)
    u = k * h
    v = math.pi * np.sinh(u)
    t = expit(v)
    w = math.pi * np.cosh(u) * expit(v) * expit(-v)
    keep = (t > 0) & (w > 0)
    t, w = t[keep], w[keep]
    t.setflags(write=False)
    w.setflags(write=False)
    return t, w


@lru_cache(maxsize=64)
def _exp_sinh(level: int) -> tuple[np.ndarray, np.ndarray]:
    """New nodes for (0, inf): t = exp(pi/2 sinh u)."""
    h = 2.0**-level
    k = _new_indices(level, _ES_ULO, _ES_UHI)
    u = k * h
    t = np.exp(0.5 * math.pi * np.sinh(u))
    w = 0.5 * math.pi * np.cosh(u) * t
    keep = np.isfinite(t) & np.isfinite(w)
    t, w = t[keep], w[keep]
    t.setflags(write=False)
    w.setflags(write=False)
    return t, w


def _new_indices(level: int, ulo: float, uhi: float) -> np.ndarray:
    h = 2.0**-level
    k = np.arange(-math.ceil(ulo / h), math.ceil(uhi / h) + 1, dtype=float)
    if level > _MIN_LEVEL:
        k = k[(k.astype(np.int64) % 2) != 0]
    return k


def _eval(f, t):
    with np.errstate(all="ignore"):
        y = np.asarray(f(t), dtype=float)
    return np.where(np.isfinite(y), y, 0.0), int(np.count_nonzero(~np.isfinite(y)))


def _run(pieces, ctl: QuadratureControl) -> EvalResult:
    """pieces: list of (nodes_fn, transform) where transform maps unit nodes to (t, w)."""
    totals = [0.0] * len(pieces)
    absum = 0.0
    prev = None
    diff = math.inf
    bad = 0
    for level in range(_MIN_LEVEL, ctl.max_level + 1):
        h = 2.0**-level
        est = 0.0
        for i, (nodes, f, transform) in enumerate(pieces):
            tu, wu = nodes(level)
            t, w = transform(tu, wu)
            y, nb = _eval(f, t)
            bad += nb
            new = float(np.dot(w, y))
            absum_piece = float(np.dot(w, np.abs(y)))
            if level == _MIN_LEVEL:
                totals[i] = h * new
            else:
                totals[i] = 0.5 * totals[i] + h * new
            absum = max(absum, h * absum_piece * (2 if level > _MIN_LEVEL else 1))
            est += totals[i]
        if prev is not None:
            diff = abs(est - prev)
            floor = 64 * 2.2e-16 * absum
            if diff <= max(ctl.target_tol * abs(est), floor):
                flags = ("non-finite-samples",) if bad else ()
                return EvalResult(est, max(diff, floor), "de-quadrature", flags)
        prev = est
    raise QuadratureFailure(
        f"quadrature did not reach {ctl.target_tol:g} by level {ctl.max_level} (last change {diff:.3g})"
    )


def half_line(f: Callable[[np.ndarray], np.ndarray], ctl: QuadratureControl = QuadratureControl(),
              left_exponent: float = 0.0) -> EvalResult:
    """Integrate ``f`` over ``(0, inf)``.

    ``left_exponent`` is the power-law exponent of ``f`` at ``t -> 0``; the
    integral is rejected as divergent when it is ``<= -1``.
    """
    if left_exponent <= -1.0:
        raise DivergentIntegral(f"integrand behaves like t**{left_exponent} at 0")
    s = float(ctl.split)
    pieces = [
        (_tanh_sinh, f, lambda tu, wu: (s * tu, s * wu)),
        (_exp_sinh, f, lambda tu, wu: (s + tu, wu)),
    ]
    return _run(pieces, ctl)


def finite(f: Callable[[np.ndarray], np.ndarray], a: float, b: float,
           ctl: QuadratureControl = QuadratureControl()) -> EvalResult:
    """Integrate ``f`` over ``(a, b)``; endpoint singularities at ``a`` are fine when ``a == 0``."""
    L = b - a
    return _run([(_tanh_sinh, f, lambda tu, wu: (a + L * tu, L * wu))], ctl)


def tail(f: Callable[[np.ndarray], np.ndarray], a: float, ctl: QuadratureControl = QuadratureControl()) -> EvalResult:
    """Integrate ``f`` over ``(a, inf)``."""
    return _run([(_exp_sinh, f, lambda tu, wu: (a + tu, wu))], ctl)


de_integrate = half_line


def laplace_u(a: float, b: float, x: float, ctl: QuadratureControl = QuadratureControl()) -> EvalResult:
    """Tricomi ``U(a, b, x)`` from its Laplace integral, for any real ``a``.

    For ``a <= 0`` the integral is first integrated by parts ``J`` times so
    that the endpoint power ``t**(a+J-1)`` is integrable:

        U = (-1)**J / Gamma(a+J) * int t**(a+J-1) d^J/dt^J [e**(-x t) (1+t)**c] dt,

    with ``c = b - a - 1``.  When ``a + J`` hits a non-positive integer the
    prefactor vanishes and ``U`` is a polynomial; that case is routed by the
    caller.
    """
    J = max(0, math.ceil(1.0 - a)) if a < 1.0 else 0
    if a + J <= 0:
        J += 1
    c = b - a - 1.0
    coeffs = []
    for i in range(J + 1):
        falling = 1.0
        for j in range(i):
            falling *= c - j
        coeffs.append(math.comb(J, i) * (-x) ** (J - i) * falling)
    p = a + J - 1.0

    def f(t):
        s = np.zeros_like(t)
        for i, ci in enumerate(coeffs):
            if ci != 0.0:
                s = s + ci * (1.0 + t) ** (c - i)
        return np.exp(-x * t + p * np.log(t)) * s

    split = min(1.0, max(0.05, (p + 1.0) / max(x, 1e-300)))
    r = half_line(f, QuadratureControl(ctl.target_tol, ctl.max_level, split), left_exponent=p)
    sign = -1.0 if J % 2 else 1.0
    lg = gammaln(a + J)
    from scipy.special import gammasgn

    scale = sign * float(gammasgn(a + J)) * math.exp(-lg)
    return EvalResult(scale * r.value, abs(scale) * r.abs_err, "laplace-quadrature", r.flags)
