"""Exception hierarchy shared by every stratum module."""


class StratumError(Exception):
    """Base class for all errors raised by this package."""


class InputError(StratumError, ValueError):
    """A caller supplied an argument outside an operation's contract."""


class DomainError(InputError):
    """Argument outside the mathematical domain of a function."""


class PrecisionLimitError(StratumError):
    """A construction was asked for more precision than it is allowed to deliver."""


class StepBudgetExceeded(StratumError):
    """A program failed to halt inside the configured interpreter step budget."""

    def __init__(self, message, *, index=None, steps=None):
        super().__init__(message)
        self.index = index
        self.steps = steps


class InsufficientEvidence(StratumError):
    """A finite bit prefix does not certify the requested decoded elements."""

    def __init__(self, message, *, partial=()):
        super().__init__(message)
        self.partial = tuple(partial)


class Refusal(StratumError):
    """An operation declined a well-formed request it cannot honour (e.g. no modulus)."""
