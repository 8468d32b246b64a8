"""Exception hierarchy.

Every error raised by the package derives from :class:`ComplementarityError`,
so callers (the command line in particular) can map families of failures to
exit codes without catching unrelated exceptions.
"""


class ComplementarityError(Exception):
    """Base class for all package errors."""


class ValidationError(ComplementarityError, ValueError):
    """Input does not describe an admissible object."""


class NumericalError(ComplementarityError, ArithmeticError):
    """An iterative or numerical procedure failed."""


class DimensionMismatch(ValidationError):
    pass


class NonHermitianInput(ValidationError):
    def __init__(self, residual):
        self.residual = float(residual)
        super().__init__(f"matrix is not Hermitian (relative residual {self.residual:.3e})")


NonHermitian = NonHermitianInput


class NotPSD(ValidationError):
    def __init__(self, min_eigenvalue):
        self.min_eigenvalue = float(min_eigenvalue)
        super().__init__(f"matrix is not positive semidefinite (min eigenvalue {self.min_eigenvalue:.6g})")


class NotPositive(NotPSD):
    pass


class BadTrace(ValidationError):
    def __init__(self, value):
        self.value = float(value)
        super().__init__(f"trace {self.value:.17g} is not 1")


class BadParameter(ValidationError):
    def __init__(self, message, index=None):
        self.index = index
        if index is not None:
            message = f"{message} (grid index {index})"
        super().__init__(message)


class NonRealExpectation(NumericalError):
    def __init__(self, imag):
        self.imag = float(imag)
        super().__init__(f"expectation has imaginary part {self.imag:.3e}")


class NoConvergence(NumericalError):
    pass


class MissingPhase(ValidationError):
    pass


class ZeroDenominator(NumericalError):
    pass


class RankDeficient(ValidationError):
    pass


class Infeasible(NumericalError):
    """Targets lie on or outside the boundary of the feasible set."""


class NotConverged(NumericalError):
    pass


class DependentConstraints(ValidationError):
    pass


class InconsistentInvariants(NumericalError):
    """Independent evaluation routes of the same quantity disagree."""
