"""
Exception hierarchy for polyfunlab
"""


class PolyfunError(Exception):
    """Base class for all library errors"""
    pass


class InvalidInputError(PolyfunError, ValueError):
    """Raised when an operation receives arguments outside its domain"""
    pass


class ModulusMismatchError(InvalidInputError):
    """Raised when two polynomials over different moduli are combined"""
    pass


class NonNormedDivisorError(InvalidInputError):
    """Raised when dividing by a polynomial whose leading coefficient is not 1"""
    pass


class NotNullPolynomialError(InvalidInputError):
    """Raised when a null-polynomial was required"""
    pass


class NotReducibleError(InvalidInputError):
    """Raised when a monomial a*x^k with n not dividing a*k! is asked to be reduced"""
    pass


class NotPrimePowerError(InvalidInputError):
    """Raised when an operation defined only over Z_{p^m} gets another modulus"""
    pass


class ParseError(InvalidInputError):
    """Raised when polynomial text cannot be parsed"""
    pass


class OracleGuardError(PolyfunError):
    """Raised when a brute-force oracle is asked for an input beyond its guard"""
    pass


class NotAnIntegerError(PolyfunError, ArithmeticError):
    """Raised when a factored count with a negative exponent is rendered as an integer"""
    pass


class InvariantViolation(PolyfunError, RuntimeError):
    """Internal logic error; never caused by user input"""
    pass
