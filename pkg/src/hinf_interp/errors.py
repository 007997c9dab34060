"""Exception and warning classes shared across the package."""


class NonConvergent(RuntimeError):
    """Quadrature refinement could not reach the requested tolerance."""


class NotHermitian(ValueError):
    pass


class PoleHit(ZeroDivisionError):
    """Evaluation point coincides with the reflection of a zero."""


class ZeroHit(ZeroDivisionError):
    """Evaluation point coincides with a zero; use ``derivative_at_zero``."""


class BadIndex(IndexError):
    pass


class NonPositive(ValueError):
    pass


class BranchPoint(ValueError):
    pass


class BracketFailure(RuntimeError):
    """Upper end of a bisection bracket was found infeasible."""


class InvariantViolation(ArithmeticError):
    """A proven inequality failed beyond numerical slack."""


class TruncationWarning(UserWarning):
    pass
