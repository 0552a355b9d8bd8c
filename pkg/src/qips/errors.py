"""Exception hierarchy shared by all modules."""


class QipsError(Exception):
    """Base class for library errors."""


class DomainError(QipsError, ValueError):
    """An argument lies outside the domain of the operation."""


class StructureError(QipsError, ValueError):
    """A matrix or graph violates a required structural pattern."""


class InternalConsistencyError(QipsError, ArithmeticError):
    """Two independent constructions of the same object disagree."""


class TheoremViolation(QipsError, ArithmeticError):
    """An identity that must hold was found to fail beyond tolerance."""


class ReconstructionError(QipsError, ValueError):
    """No admissible rational lies close enough to a float coefficient."""


class PoleError(DomainError):
    """Evaluation point is too close to a pole."""


class NotAutomorphic(QipsError, ValueError):
    """f(1/x) is not of the form C x^-D f(x) with C = +-1."""


class NotCyclotomic(QipsError, ValueError):
    """A rational function contains a non-cyclotomic factor."""


class SignMismatch(NotCyclotomic):
    """Only -f has a cyclotomic product representation."""


class FormMismatch(NotCyclotomic):
    """The monomial exponent of the cyclotomic form is not even."""


class ExactnessWarning(UserWarning):
    """An exact-mode computation was downgraded to binary64."""
