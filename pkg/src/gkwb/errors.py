"""Exception hierarchy shared across the workbench."""


class GKWBError(Exception):
    """Base class for all workbench errors."""


class UsageError(GKWBError, ValueError):
    """Bad input: mismatched generator sets, wrong presentation, zero where nonzero is required."""


class BudgetExceeded(GKWBError):
    """A configured step, degree or size budget was exhausted."""


class TheoryViolation(GKWBError):
    """A computation contradicted a mathematical claim the code relies on.

    ``witness`` carries whatever object demonstrates the violation
    (a residual polynomial, an offending iterate, ...).
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
