"""Exception hierarchy shared by every module."""


class DilatesError(Exception):
    pass


class CompositeModulus(DilatesError, ValueError):
    pass


class EmptyInput(DilatesError, ValueError):
    pass


class DomainError(DilatesError, ValueError):
    pass


class BracketFailure(DilatesError, ArithmeticError):
    """A root bracket had no sign change. Always a bug, never bad input."""


class UnknownConstant(DilatesError, KeyError):
    pass


class RuleNotApplicable(DilatesError, ValueError):
    pass


class ElementOutsideWindow(DilatesError, ValueError):
    pass


class ParseError(DilatesError, ValueError):
    pass


class InfeasibleEnumeration(DilatesError, RuntimeError):
    def __init__(self, message: str, estimated: int):
        super().__init__(f"{message} (estimated {estimated} sets)")
        self.estimated = estimated
