"""Exception types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the requested operation."""


class QuadratureError(ArithmeticError):
    """Adaptive quadrature failed to reach the requested tolerance.

    Attributes
    ----------
    achieved : float
        Largest panel error estimate left when refinement stopped.
    """

    def __init__(self, message, achieved):
        super().__init__(f"{message} (achieved tolerance {achieved:.3e})")
        self.achieved = achieved


class CoefficientOverflow(ArithmeticError):
    """A scaled quantity does not fit in double precision.

    Attributes
    ----------
    exponent : int
        Binary exponent of the offending value.
    """

    def __init__(self, message, exponent):
        super().__init__(f"{message} (binary exponent {exponent})")
        self.exponent = exponent


class NoPoleDetected(RuntimeError):
    """No range of convergence was found in the pole-position trace.

    This is a verdict rather than a failure: the samples may come from a
    function analytic in the right half-plane.
    """

    def __init__(self, message, hint="run analyticity_test() on the samples"):
        super().__init__(f"{message}; {hint}")
        self.hint = hint
