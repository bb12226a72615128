"""Reference engines used to check everything else.

Nothing here reuses the recurrences or dispatch logic of the main modules:
finite differences only call the function under test, and the brute-force
series rebuilds every term from scratch.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Callable, Iterable, Sequence

from ._common import EvalResult, SeriesControl, SeriesResult
from .errors import DomainError, EvalFailure, NonConvergence, WderivError

__all__ = [
    "Stencil",
    "FDSpec",
    "fd_param_derivative",
    "brute_series",
    "brute_pfq",
    "ComparisonReport",
    "compare",
    "sweep",
]


class Stencil(str, Enum):
    CENTRAL2 = "central2"
    CENTRAL4 = "central4"


@dataclass(frozen=True)
class FDSpec:
    """Finite-difference settings; ``step=None`` means ``1e-5 * max(1, |at|)``."""

    step: float | None = None
    stencil: Stencil = Stencil.CENTRAL4
    richardson_levels: int = 1

    def __post_init__(self):
        if self.step is not None and not self.step > 0:
            raise DomainError("FD step must be positive")
        if self.richardson_levels not in (0, 1, 2):
            raise DomainError("richardson_levels must be 0, 1 or 2")
        object.__setattr__(self, "stencil", Stencil(self.stencil))


def fd_param_derivative(f: Callable[[float], float], at: float, spec: FDSpec = FDSpec()) -> EvalResult:
    """Derivative of ``f`` at ``at`` by central differences with Richardson extrapolation.

    The error estimate is the change produced by the last extrapolation
    level (or by halving the step when no extrapolation is requested).
    """
    h = spec.step if spec.step is not None else 1e-5 * max(1.0, abs(at))

    def call(t):
        try:
            v = float(f(t))
        except (WderivError, ArithmeticError, ValueError) as exc:
            raise EvalFailure(f"function failed inside the FD stencil at {t}: {exc}") from exc
        if not math.isfinite(v):
            raise EvalFailure(f"non-finite value inside the FD stencil at {t}")
        return v

    if spec.stencil is Stencil.CENTRAL2:
        order = 2

        def d(hh):
            return (call(at + hh) - call(at - hh)) / (2 * hh)
    else:
        order = 4

        def d(hh):
            return (8 * (call(at + hh) - call(at - hh)) - (call(at + 2 * hh) - call(at - 2 * hh))) / (12 * hh)

    levels = spec.richardson_levels
    row = [d(h / 2**i) for i in range(levels + 1)] if levels else [d(h), d(h / 2)]
    if levels == 0:
        return EvalResult(row[0], abs(row[1] - row[0]), f"fd:{spec.stencil.value}")
    p = order
    prev_best = row[-1]
    while len(row) > 1:
        factor = 2.0**p
        row = [(factor * row[i + 1] - row[i]) / (factor - 1) for i in range(len(row) - 1)]
        p += 2
        best = row[-1]
        err = abs(best - prev_best)
        prev_best = best
    return EvalResult(row[0], err, f"fd:{spec.stencil.value}+richardson{levels}")


def brute_series(term_fn: Callable[[int], complex], ctl: SeriesControl = SeriesControl()) -> SeriesResult:
    """Plain summation of ``term_fn(0) + term_fn(1) + ...``.

    Stops after three consecutive terms below ``rel_tol`` of the running
    sum (or below ``abs_floor``).
    """
    s = 0.0
    small = 0
    last = 0.0
    for n in range(ctl.max_terms):
        t = term_fn(n)
        s = s + t
        last = abs(t)
        if last <= ctl.rel_tol * abs(s) or last <= ctl.abs_floor:
            small += 1
            if small >= 3:
                return SeriesResult(s, n + 1, last)
        else:
            small = 0
    raise NonConvergence(f"brute-force series did not settle in {ctl.max_terms} terms")


def brute_pfq(upper: Sequence[float], lower: Sequence[float], z, ctl: SeriesControl = SeriesControl()) -> SeriesResult:
    """``pFq`` with each term built from scratch as a product of Pochhammer symbols."""

    def poch(a, n):
        return math.prod(a + j for j in range(n))

    def term(n):
        num = math.prod(poch(a, n) for a in upper)
        den = math.prod(poch(b, n) for b in lower) * math.factorial(n)
        return num / den * z**n

    return brute_series(term, ctl)


@dataclass(frozen=True)
class ComparisonReport:
    lhs: float
    rhs: float
    abs_diff: float
    rel_diff: float
    tol: float
    passed: bool
    context: str

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d


def compare(lhs: float, rhs: float, tol: float, context: str = "") -> ComparisonReport:
    """Pass when ``|lhs - rhs| <= tol * max(1, |lhs|, |rhs|)``."""
    lhs, rhs = float(lhs), float(rhs)
    diff = abs(lhs - rhs)
    scale = max(abs(lhs), abs(rhs))
    rel = diff / scale if scale > 0 else diff
    ok = math.isfinite(diff) and diff <= tol * max(1.0, scale)
    return ComparisonReport(lhs, rhs, diff, rel, tol, ok, context)


def sweep(grid: Iterable, fn_pair: tuple[Callable, Callable], tol: float, label: str = "") -> list[ComparisonReport]:
    """Compare ``fn_pair[0](*p)`` and ``fn_pair[1](*p)`` at each grid point.

    Errors raised by either side become failing reports rather than
    exceptions.
    """
    f, g = fn_pair
    out = []
    for p in grid:
        args = p if isinstance(p, tuple) else (p,)
        ctx = f"{label}{args}"
        try:
            out.append(compare(float(f(*args)), float(g(*args)), tol, ctx))
        except (WderivError, ArithmeticError, ValueError) as exc:
            out.append(ComparisonReport(math.nan, math.nan, math.inf, math.inf, tol, False, f"{ctx}: {exc}"))
    return out
