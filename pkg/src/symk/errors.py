"""Exception hierarchy shared by the library and the CLI."""


class SymkError(Exception):
    exit_code = 1


class SpecParseError(SymkError, ValueError):
    """Malformed field / involution / group specification string."""

    exit_code = 1

    def __init__(self, text, position, message):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position} in {text!r}")


class UnsupportedCombination(SymkError):
    exit_code = 2


class BudgetExceeded(SymkError):
    exit_code = 3


class CriteriaDisagree(SymkError):
    """Cokernel emptiness and the rank test gave different verdicts."""

    exit_code = 4


class NotThetaStable(SymkError, ValueError):
    pass


class PreconditionError(SymkError, ValueError):
    pass
