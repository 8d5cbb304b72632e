"""Exception hierarchy shared by all modules."""


class FleajumpError(Exception):
    """Base class for every error raised by this package."""


class DegenerateInput(FleajumpError):
    """Coincident points where distinct lattice points are required."""


class NotATriangleState(FleajumpError):
    """A quadruple whose implied side squares are not all nonnegative."""


class FactorizationBudgetExceeded(FleajumpError):
    """Trial division ran past its configured bound."""


class UndefinedValuation(FleajumpError):
    """2-adic valuation requested for zero."""


class InvalidModulus(FleajumpError):
    """Jacobi symbol requested for an even or non-positive modulus."""


class ResidueBudgetExceeded(FleajumpError):
    """Quadratic-residue enumeration modulus above the configured budget."""


class WordSyntaxError(FleajumpError):
    """Unparseable jump-word text."""


class ModelInconsistency(FleajumpError):
    """Coordinate replay disagrees with the matrix model.

    Raised when neither rotation candidate of a square jump reproduces the
    algebraically predicted quadruple.  Indicates an implementation bug, not
    bad input.
    """


class CheckpointFormatError(FleajumpError):
    """Corrupt, truncated, or version-mismatched checkpoint file."""


class MemoryBudgetExceeded(FleajumpError):
    """Enumeration frontier outgrew the memory budget.

    When a checkpoint path was configured the partial run has been spilled
    there and the attribute ``checkpoint_path`` names the file to resume
    from.
    """

    def __init__(self, message, checkpoint_path=None):
        super().__init__(message)
        self.checkpoint_path = checkpoint_path


class ScanBudgetExceeded(FleajumpError):
    """Scan request above the supported coordinate budget."""


class UsageError(FleajumpError):
    """Invalid command line arguments or configuration values."""
