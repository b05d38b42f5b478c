"""Exception types shared across the toolkit."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class UsageError(ValueError):
    """An operation was called with structurally invalid arguments."""


class HypothesisError(DomainError):
    """A hypothesis of a construction fails; ``index`` is the first offender (1-based)."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class InconclusiveError(ArithmeticError):
    """A certified comparison could not be decided at the maximum precision."""

    def __init__(self, message, index=None, verdict=None):
        super().__init__(message)
        self.index = index
        self.verdict = verdict
