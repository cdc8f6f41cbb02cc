"""Exception hierarchy shared by every dynalg module.

All computational failures derive from DynalgError so that the CLI can map
them to a structured error JSON and exit code 2.
"""


class DynalgError(Exception):
    """Base class for every error raised by this package."""

    kind = "Error"

    def payload(self) -> dict:
        return {"kind": self.kind, "message": str(self)}


class DivisionByZero(DynalgError, ZeroDivisionError):
    kind = "DivisionByZero"


class ScalarParseError(DynalgError):
    kind = "ScalarParseError"


class ParseError(DynalgError):
    """Expression syntax error with position and expected-token info."""

    kind = "ParseError"

    def __init__(self, message, position, expected=None):
        super().__init__(message)
        self.position = position
        self.expected = expected

    def payload(self) -> dict:
        out = {"kind": self.kind, "message": str(self), "position": str(self.position)}
        if self.expected:
            out["expected"] = self.expected
        return out


class ZeroDenominator(DynalgError):
    kind = "ZeroDenominator"


class IterationBudgetExceeded(DynalgError):
    kind = "IterationBudgetExceeded"


class NotAFixedPoint(DynalgError):
    kind = "NotAFixedPoint"


class NotRepelling(DynalgError):
    kind = "NotRepelling"


class ZeroMultiplier(DynalgError):
    kind = "ZeroMultiplier"


class ResonantMultiplier(DynalgError):
    kind = "ResonantMultiplier"


class PoleAtBasePoint(DynalgError):
    kind = "PoleAtBasePoint"


class DegreeTooSmall(DynalgError):
    kind = "DegreeTooSmall"


class LeadingCoefficientNotSolvable(DynalgError):
    """No field element a satisfies lead * a**exponent = 1."""

    kind = "LeadingCoefficientNotSolvable"

    def __init__(self, message, radicand=None, exponent=None):
        super().__init__(message)
        self.radicand = radicand
        self.exponent = exponent

    def payload(self) -> dict:
        out = {"kind": self.kind, "message": str(self)}
        if self.radicand is not None:
            out["radicand"] = str(self.radicand)
        if self.exponent is not None:
            out["exponent"] = str(self.exponent)
        return out


class InsufficientOrder(DynalgError):
    kind = "InsufficientOrder"


class DegenerateParametrization(DynalgError):
    kind = "DegenerateParametrization"


class InconsistentDegrees(DynalgError):
    kind = "InconsistentDegrees"


class ParamMismatch(DynalgError):
    kind = "ParamMismatch"


class UnresolvedPreimage(DynalgError):
    """Root extraction hit a factor that is irreducible over the active field."""

    kind = "UnresolvedPreimage"

    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor

    def payload(self) -> dict:
        out = {"kind": self.kind, "message": str(self)}
        if self.factor is not None:
            out["factor"] = str(self.factor)
        return out


class FactorBoundExceeded(DynalgError):
    kind = "FactorBoundExceeded"


class MissingFixture(DynalgError):
    kind = "MissingFixture"
