"""Exception hierarchy shared by all lgorb modules."""


class LgorbError(Exception):
    """Base class for every error raised by lgorb."""


class NonExactDivision(LgorbError, ArithmeticError):
    """A Puiseux quotient left a nonzero remainder."""


class NotInvertible(LgorbError, ValueError):
    pass


class NotPositive(LgorbError, ValueError):
    pass


class NotInvertibleType(LgorbError, ValueError):
    pass


class NotSubgroup(LgorbError, ValueError):
    pass


class TooLarge(LgorbError, ValueError):
    pass


class NonIntegralInvariant(LgorbError, ArithmeticError):
    """An averaged character coefficient was not a non-negative integer."""


class NonIntegral(LgorbError, ArithmeticError):
    pass


class NOddRequired(LgorbError, ValueError):
    pass


class UnsupportedGroup(LgorbError, ValueError):
    pass


class DuplicateEdge(LgorbError, ValueError):
    pass


class BadAlpha(LgorbError, ValueError):
    pass


class ActionNotIsometric(LgorbError, ValueError):
    pass


class OrbitMismatch(LgorbError, ValueError):
    pass


class NotDivisible(LgorbError, ValueError):
    pass


class VerificationFailed(LgorbError):
    def __init__(self, message, diff=None):
        super().__init__(message)
        self.diff = diff


class PoleAtPoint(LgorbError, ZeroDivisionError):
    pass


class NotRepresentable(LgorbError, ValueError):
    def __init__(self, message, elements=()):
        super().__init__(message)
        self.elements = tuple(elements)


class CorruptFixture(LgorbError, ValueError):
    pass


class UnknownFigure(LgorbError, KeyError):
    pass
