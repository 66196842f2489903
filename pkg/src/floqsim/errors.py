"""Exception types raised by the engine."""


class FloqsimError(Exception):
    """Base class for all engine errors."""


class DimensionMismatchError(FloqsimError):
    """Operands act on different numbers of qubits."""


class NonCommutingError(FloqsimError):
    """A generating set contains an anticommuting pair."""

    def __init__(self, i: int, j: int, message: str = ""):
        self.i = i
        self.j = j
        super().__init__(message or f"generators {i} and {j} anticommute")


class NonCommutingRoundError(NonCommutingError):
    """Two checks scheduled in the same round anticommute."""


class UnknownLabelError(FloqsimError):
    """A schedule references a round label the code does not declare."""


class UnsupportedSizeError(FloqsimError):
    """Lattice size violates a family parity constraint."""


class StructureMismatchError(FloqsimError):
    """A named lattice stabilizer failed its membership check."""


class ValidationFailedError(FloqsimError):
    """Parent-code validation failed."""


class InvalidSpecError(FloqsimError):
    """A boundary truncation spec is not one of the supported cuts."""


class PeriodicityViolationError(FloqsimError):
    """ISG ranks failed to repeat with the schedule period after warm-up."""


class ConfigError(FloqsimError):
    """A run configuration could not be resolved."""
