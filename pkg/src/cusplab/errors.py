"""Exception hierarchy shared by every cusplab module."""


class CusplabError(ValueError):
    """Base class for all domain errors raised by cusplab."""


# jets
class DivisionByNearZero(CusplabError):
    pass


class DomainViolation(CusplabError):
    pass


class NotDivisible(CusplabError):
    pass


# curves
class NotSingular(CusplabError):
    pass


class NotAType(CusplabError):
    pass


class NotRamphoid(CusplabError):
    pass


class NotRegular(CusplabError):
    pass


class FlatPoint(CusplabError):
    pass


# frontals
class NotFrontal(CusplabError):
    pass


class NormalInvalid(CusplabError):
    pass


class DegenerateSingularity(CusplabError):
    pass


class NotFirstKind(CusplabError):
    pass


class FrontPoint(CusplabError):
    pass


# intrinsic
class NotExtendable(CusplabError):
    pass


class NotAdjusted(CusplabError):
    pass


class NotNormalized(CusplabError):
    pass


class NotKossowski(CusplabError):
    pass


# gallery
class BadParams(CusplabError):
    pass


# expression language
class ParseError(CusplabError):
    def __init__(self, message, line=1, column=1, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        detail = f"{message} at line {line}, column {column}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)


class UnsupportedIntegral(CusplabError):
    pass
