"""Exception hierarchy shared by all modules."""


class NovikovError(Exception):
    """Base class for every error raised by this package."""


class TermParseError(NovikovError, ValueError):
    def __init__(self, message, offset=None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at byte {offset})"
        super().__init__(message)


class UnknownLetter(TermParseError):
    pass


class TermSyntaxError(TermParseError):
    pass


class UnbalancedParens(TermParseError):
    pass


class InhomogeneousPolynomial(NovikovError, ValueError):
    pass


class DegreeMismatch(NovikovError, ValueError):
    pass


class ShapeMismatch(NovikovError, ValueError):
    pass


class InvalidTableau(NovikovError, ValueError):
    pass


class MultinomialMismatch(NovikovError, ValueError):
    pass


class IdentityViolation(NovikovError, AssertionError):
    def __init__(self, triple, which):
        self.triple = triple
        self.which = which
        super().__init__(f"{which} identity fails under the realization for {triple}")


class InconsistentSystem(NovikovError, ArithmeticError):
    pass


class RankDeficient(NovikovError, ArithmeticError):
    pass


class CapExceeded(NovikovError, ValueError):
    pass
