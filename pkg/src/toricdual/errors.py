"""Exception types shared across modules."""


class HypothesisError(ValueError):
    """An input violates a mathematical hypothesis an operation depends on.

    The ``criterion`` attribute names the condition that failed so the CLI
    can report it verbatim.
    """

    def __init__(self, message: str, criterion: str = ""):
        super().__init__(message)
        self.criterion = criterion or message


class NotPointedError(HypothesisError):
    """ker_Z(A) meets the nonnegative orthant outside the origin."""

    def __init__(self, witness=None):
        msg = "kernel contains a nonzero nonnegative vector"
        if witness is not None:
            msg += f" {tuple(witness)}"
        super().__init__(msg, "ker_Z(A) ∩ N^n = {0}")
        self.witness = witness


class EnumerationInfeasible(RuntimeError):
    """An exhaustive enumeration would exceed its configured size limit."""

    def __init__(self, what: str, size, limit):
        super().__init__(f"{what}: size {size} exceeds limit {limit}")
        self.what = what
        self.size = size
        self.limit = limit
