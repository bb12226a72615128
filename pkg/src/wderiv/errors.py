"""Exception hierarchy shared by every module."""


class WderivError(Exception):
    """Base class for all library errors."""


class DomainError(WderivError, ValueError):
    """Arguments fall outside the region where the requested formula is valid."""


class PoleError(DomainError):
    """A gamma-type factor or a denominator parameter hits a pole."""


class DivergentIntegral(DomainError):
    """The requested integral does not converge at an endpoint."""


class NonConvergence(WderivError, ArithmeticError):
    """A series or iteration exhausted its budget before meeting the tolerance."""


class QuadratureFailure(NonConvergence):
    """Quadrature refinement stopped improving before reaching the target."""


class StepCollapse(NonConvergence):
    """Finite-difference steps were too small to resolve a derivative."""


class EvalFailure(WderivError):
    """A callable raised while being sampled by an oracle."""


class EvalOverflow(WderivError, OverflowError):
    """A value overflows double precision."""
