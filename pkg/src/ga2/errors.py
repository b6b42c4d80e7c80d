"""Exception types. The CLI prints ``ERROR <kind>: <message>`` using the class name as kind."""


class GA2Error(Exception):
    @property
    def kind(self):
        return type(self).__name__


class DivisionByZero(GA2Error, ZeroDivisionError):
    pass


class FieldMismatch(GA2Error, TypeError):
    pass


class ZeroInput(GA2Error, ValueError):
    pass


class ZeroPolynomial(GA2Error, ValueError):
    pass


class CharacteristicTwo(GA2Error, ValueError):
    pass


class NotAnAutomorphism(GA2Error, ValueError):
    pass


class NoElementaryPart(GA2Error, ValueError):
    pass


class NotCyclicallyReduced(GA2Error, ValueError):
    pass


class Undecided(GA2Error):
    """The solver gave up; this is never a negative answer."""


class Singular(GA2Error, ValueError):
    pass


class NotInvolution(GA2Error, ValueError):
    pass


class NotInFactor(GA2Error, ValueError):
    pass


class InvalidLetters(GA2Error, ValueError):
    pass


class FourthRootPresent(GA2Error, ValueError):
    pass


class EvenPolynomial(GA2Error, ValueError):
    pass


class ZeroGamma(GA2Error, ValueError):
    pass


class CapExceeded(GA2Error):
    pass


class TheoremViolation(GA2Error, AssertionError):
    pass


class InconsistentCertificates(GA2Error, ValueError):
    pass


class UnsupportedField(GA2Error, ValueError):
    pass


class NotFixedPoint(GA2Error, ValueError):
    pass


class NotFiniteField(GA2Error, ValueError):
    pass


class ReversorCheckFailed(GA2Error, ValueError):
    pass


class SymmetryCheckFailed(GA2Error, ValueError):
    pass


class ParseError(GA2Error, ValueError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)
        self.position = position


class FieldLiteralError(GA2Error, ValueError):
    pass


class InvalidField(GA2Error, ValueError):
    pass
