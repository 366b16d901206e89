"""Exception hierarchy shared by all modules.

Every error carries an ``exit_code`` used by the command line driver:
2 for bad input, 3 for violated internal invariants.
"""


class QuadAlgError(Exception):
    exit_code = 2


class InputError(QuadAlgError):
    exit_code = 2


class DivisionByZero(InputError, ZeroDivisionError):
    pass


class AmbientMismatch(InputError, ValueError):
    pass


class DegreeOverflow(QuadAlgError, ValueError):
    pass


class NotFiniteDimensional(QuadAlgError):
    pass


class Inconclusive(QuadAlgError):
    pass


class MalformedStructureConstants(InputError, ValueError):
    pass


class ConditionIFailed(InputError):
    """P meets F^1(T(E)) nontrivially; ``witness`` is a nonzero element of P in F^1."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ConditionAFailed(QuadAlgError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotQuadraticLinear(InputError):
    pass


class RepresentationInvalid(InputError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class CurvatureNonzero(QuadAlgError):
    pass


class VerificationFailed(QuadAlgError):
    """An identity that must hold exactly did not; carries the offending location."""

    exit_code = 3

    def __init__(self, message, degree=None, element=None, residual=None):
        super().__init__(message)
        self.degree = degree
        self.element = element
        self.residual = residual


class InvariantViolation(QuadAlgError):
    exit_code = 3
