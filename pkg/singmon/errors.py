"""Exception hierarchy for singmon.

Every computational failure raises a subclass of `SingmonError`; the CLI turns these
into exit code 2 and the HTTP API into a 422 response.
"""
from typing import Optional


class SingmonError(Exception):
    """Base class for all domain errors."""


class ParseError(SingmonError):
    def __init__(self, message: str, position: int, text: Optional[str] = None):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text


class NonDivisorPeriod(SingmonError):
    pass


class NonIntegralExponent(SingmonError):
    pass


class NotAPolynomial(SingmonError):
    pass


class NotCyclotomicProduct(SingmonError):
    pass


class InvalidGeometry(SingmonError):
    pass


class NotCoprime(SingmonError):
    pass


class ZeroExponent(SingmonError):
    pass


class NotSimplePole(SingmonError):
    pass


class RemainderNonzero(SingmonError):
    pass


class NonGaloisStable(SingmonError):
    pass


class CaseViolation(SingmonError):
    pass


class UnsupportedLabel(SingmonError):
    pass


class OddPowerPresent(SingmonError):
    pass


class NonIntegralDims(SingmonError):
    pass


class UnknownEntry(SingmonError):
    pass


class RootOfUnityExponent(SingmonError):
    """xi^R = 1 at the requested alpha, so the residue formula has a zero denominator."""
