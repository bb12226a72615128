"""Whittaker functions and their parameter derivatives.

Main entry points:

* :func:`whittaker_w`, :func:`whittaker_m`, :func:`wi_lower`, :func:`wi_upper`
* :func:`dW` for ``dW/dkappa`` and ``dW/dmu`` with automatic route selection
* :mod:`wderiv.logint` for the logarithmic integrals behind the derivatives
* :mod:`wderiv.verify` and the ``wderiv`` command for self-checks
"""

from ._common import (CaseKey, DerivResult, EvalResult, QuadratureControl, SeriesControl, SeriesResult,
                      WhittakerPoint)
from .derivs import DerivRequest, Route, Wrt, dW, dW_auto
from .errors import (DivergentIntegral, DomainError, EvalFailure, EvalOverflow, NonConvergence, PoleError,
                     QuadratureFailure, StepCollapse, WderivError)
from .whittaker import whittaker_m, whittaker_w, wi_lower, wi_upper

__version__ = "0.1.0"

__all__ = [
    "CaseKey", "DerivResult", "EvalResult", "QuadratureControl", "SeriesControl", "SeriesResult", "WhittakerPoint",
    "DerivRequest", "Route", "Wrt", "dW", "dW_auto",
    "DivergentIntegral", "DomainError", "EvalFailure", "EvalOverflow", "NonConvergence", "PoleError",
    "QuadratureFailure", "StepCollapse", "WderivError",
    "whittaker_m", "whittaker_w", "wi_lower", "wi_upper",
]
