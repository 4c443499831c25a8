"""Exception hierarchy.

Every error raised by the library derives from :class:`ElkiesError`.  The
pipeline fills in ``stage`` so a failure can be traced to the step that
produced it.
"""


class ElkiesError(Exception):
    stage = None

    def __init__(self, message="", stage=None):
        super().__init__(message)
        if stage is not None:
            self.stage = stage

    def __str__(self):
        msg = super().__str__()
        return f"[{self.stage}] {msg}" if self.stage else msg


# arithmetic
class ContextMismatch(ElkiesError, ValueError):
    pass


class NonUnit(ElkiesError, ZeroDivisionError):
    pass


class NotDivisible(ElkiesError, ArithmeticError):
    """Exact division by a power of p was requested on a non-multiple.

    Inside the pipeline this means the precision budget was too small.
    """


class NotASquare(ElkiesError, ValueError):
    pass


class SingularRoot(ElkiesError, ValueError):
    pass


# series / ode / reconstruction
class NotAPerfectSquare(ElkiesError, ValueError):
    pass


class BadInitialConditions(ElkiesError, ValueError):
    pass


class ReconstructionFailed(ElkiesError):
    pass


class OddnessViolated(ElkiesError):
    pass


# curves and modular polynomials
class SingularCurve(ElkiesError, ValueError):
    pass


class SpecialJ(ElkiesError, ValueError):
    pass


class AtkinPrime(ElkiesError):
    pass


class DoubleRoot(ElkiesError):
    pass


class MissingEll(ElkiesError, LookupError):
    pass


class ParseError(ElkiesError, ValueError):
    pass


class ValidationError(ElkiesError, ValueError):
    pass


class VerificationFailed(ElkiesError):
    def __init__(self, message="", stage=None, report=None):
        super().__init__(message, stage)
        self.report = report
