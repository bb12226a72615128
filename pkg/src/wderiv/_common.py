"""Result records, tolerance controls and small numeric helpers."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

SNAP_TOL = 1e-12


def _env_max_terms() -> int:
    raw = os.environ.get("WDERIV_MAX_TERMS")
    if raw is None:
        return 10_000
    try:
        value = int(raw)
    except ValueError:
        return 10_000
    return max(value, 1)


@dataclass(frozen=True)
class SeriesControl:
    """Stopping rule for power series.

    Summation stops once three consecutive terms are below
    ``rel_tol * |partial sum|`` or below ``abs_floor``.
    """

    rel_tol: float = 1e-16
    abs_floor: float = 1e-300
    max_terms: int = field(default_factory=_env_max_terms)


@dataclass(frozen=True)
class QuadratureControl:
    target_tol: float = 1e-10
    max_level: int = 12
    split: float = 1.0


@dataclass(frozen=True)
class SeriesResult:
    value: complex | float
    terms_used: int
    tail_bound: float


@dataclass(frozen=True)
class EvalResult:
    value: float
    abs_err: float
    method: str
    flags: tuple[str, ...] = ()
    imag_residual: float = 0.0

    def __float__(self) -> float:
        return float(self.value)


class CaseKey(str, Enum):
    """Which closed form or numerical route produced a derivative."""

    GENERIC_SERIES = "generic-series"
    INTEGRAL_REP = "integral-rep"
    FINITE_DIFFERENCE = "finite-difference"
    KAPPA_MU_PLUS_HALF = "kappa=mu+1/2"
    KAPPA_HALF_MINUS_MU = "kappa=1/2-mu"
    INTEGER_LIMIT = "kappa=(1+m)/2,mu=m/2"
    KAPPA_N_MU_HALF = "kappa=n,mu=1/2"
    UPPER_GAMMA_FAMILY = "kappa=n/2,mu=(n+1)/2"
    KAPPA_ZERO_HALF_INT = "kappa=0,mu=n+1/2"
    KAPPA_ZERO = "kappa=0"
    ODD_ZERO = "mu=0"


@dataclass(frozen=True)
class DerivResult:
    value: float
    err_estimate: float
    case_used: CaseKey
    method: str = ""
    imag_residual: float = 0.0
    flags: tuple[str, ...] = ()

    def __float__(self) -> float:
        return float(self.value)


@dataclass(frozen=True)
class WhittakerPoint:
    kappa: float
    mu: float
    x: float


def snap_int(v: float, tol: float = SNAP_TOL) -> int | None:
    """Return ``round(v)`` when ``v`` is an integer to within ``tol``."""
    r = round(v)
    if abs(v - r) <= tol * max(1.0, abs(v)):
        return int(r)
    return None


def snap_rational(v: float, max_den: int = 12, tol: float = SNAP_TOL) -> Fraction | None:
    f = Fraction(v).limit_denominator(max_den)
    if abs(float(f) - v) <= tol * max(1.0, abs(v)):
        return f
    return None


def nonpos_int(v: float) -> int | None:
    """Return ``m`` when ``v == -m`` for an integer ``m >= 0``, else None."""
    n = snap_int(v)
    if n is not None and n <= 0:
        return -n
    return None


def parse_number(text: str) -> float:
    """Parse a decimal or a ``p/q`` rational."""
    text = text.strip()
    if "/" in text:
        return float(Fraction(text))
    return float(text)


def real_part(z: complex, what: str = "value") -> tuple[float, float]:
    """Split a result that should be real into (real part, relative imaginary residual)."""
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        from .errors import EvalOverflow

        raise EvalOverflow(f"{what}: non-finite value")
    return z.real, abs(z.imag) / max(1.0, abs(z.real))
