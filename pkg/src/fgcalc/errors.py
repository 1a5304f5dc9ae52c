"""Exception hierarchy.

Every error carries a stable ``code`` string and the process exit status the
command-line front end uses for it.
"""

EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_VERIFICATION = 4
EXIT_UNSUPPORTED = 5


class FgcalcError(Exception):
    exit_status = EXIT_PRECONDITION

    @property
    def code(self):
        return type(self).__name__


# precondition violations

class RingMismatch(FgcalcError):
    pass


class VariableMismatch(FgcalcError):
    pass


class NotAUnit(FgcalcError):
    pass


class NotAlmostIdempotent(FgcalcError):
    pass


class NonNilpotentConstantTerm(FgcalcError):
    pass


class NotACoordinate(FgcalcError):
    pass


class WrongCharacteristic(FgcalcError):
    pass


class DerivativeNotZero(FgcalcError):
    pass


class RequiresRationalCoefficients(FgcalcError):
    pass


class NotWeierstrass(FgcalcError):
    pass


class OrderTooLow(FgcalcError):
    pass


class NotNilpotentRoot(FgcalcError):
    pass


class NotConstantDegree(FgcalcError):
    pass


class NotInvertible(FgcalcError):
    pass


class NotFiltered(FgcalcError):
    pass


class Cancelled(FgcalcError):
    pass


# verification failures

class VerificationFailed(FgcalcError):
    exit_status = EXIT_VERIFICATION


class AxiomViolation(VerificationFailed):
    def __init__(self, axiom, exponent, value):
        self.axiom = axiom
        self.exponent = tuple(exponent)
        self.value = value
        super().__init__(f"{axiom} fails at exponent {self.exponent}: {value}")


class NotAdditive(VerificationFailed):
    def __init__(self, exponent, value=None):
        self.exponent = tuple(exponent)
        self.value = value
        super().__init__(f"not additive: f(x+y)-f(x)-f(y) has coefficient "
                         f"{value} at {self.exponent}")


class AntipodeVerificationFailed(VerificationFailed):
    pass


class UnsupportedRing(FgcalcError):
    exit_status = EXIT_UNSUPPORTED


class ParseError(FgcalcError):
    exit_status = EXIT_PARSE

    def __init__(self, message, text="", pos=0, expected=()):
        self.text = text
        self.pos = pos
        self.expected = tuple(expected)
        # single-line inputs, but keep line/column honest for multi-line ones
        self.line = text.count("\n", 0, pos) + 1
        self.column = pos - (text.rfind("\n", 0, pos) + 1) + 1
        msg = f"{message} at line {self.line}, column {self.column}"
        if self.expected:
            msg += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(msg)
