"""Exception hierarchy shared by every layer of the package."""

from __future__ import annotations


class CurveprojError(Exception):
    """Base class for all library errors."""


class DegenerateInput(CurveprojError):
    """A polynomial operation received input outside its domain."""


class DegreeCapExceeded(CurveprojError):
    def __init__(self, what: str, degree: int, cap: int):
        super().__init__(f"{what}: degree {degree} exceeds cap {cap}")
        self.what = what
        self.degree = degree
        self.cap = cap


class EliminationFailed(CurveprojError):
    """Implicitization produced an identically vanishing eliminant."""


class EliminationDegenerate(CurveprojError):
    """Signature elimination produced nothing usable."""


class VerticalCurve(CurveprojError):
    pass


class SingularOnly(CurveprojError):
    pass


class LineCurve(CurveprojError):
    """A spatial curve is a straight line."""


class ExceptionalDenominator(CurveprojError):
    """An invariant's denominator vanishes identically on a curve.

    ``discriminant`` names the vanishing factor: ``"delta1"``, ``"delta2"``
    or ``"y2"``.
    """

    def __init__(self, discriminant: str, message: str | None = None):
        super().__init__(message or f"{discriminant} vanishes identically on the curve")
        self.discriminant = discriminant


class Exceptional(CurveprojError):
    def __init__(self, cls):
        super().__init__(f"curve is exceptional: {cls}")
        self.cls = cls


class ChainUndefined(CurveprojError):
    pass


class SingularA(CurveprojError):
    pass


class ImageDegenerate(CurveprojError):
    pass


class DegenerateCandidate(CurveprojError):
    pass


class ParseError(CurveprojError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ArityError(CurveprojError):
    pass


class NonRationalExponent(ParseError):
    pass


class LengthMismatch(CurveprojError):
    pass
