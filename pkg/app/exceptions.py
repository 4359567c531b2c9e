"""
Exception hierarchy for the neural code toolkit.

Every error derives from ValueError so callers that only guard against bad
input keep working.
"""


class NeuralCodeError(ValueError):
    """Base class for all toolkit errors."""


class DimensionMismatchError(NeuralCodeError):
    """Points, vectors or matrices of incompatible shape were combined."""


class InhomogeneousMatrixError(NeuralCodeError):
    """No rational w with a·w = 1 for every column exists, so fibers are unbounded."""


class DeskScaleError(NeuralCodeError):
    """A computation was refused because it exceeds a configured size guard."""


class NotExtremeError(NeuralCodeError):
    """A point expected to be a vertex is not extreme."""


class ReductionLimitError(NeuralCodeError):
    """Binomial reduction did not terminate within the configured step budget."""


class NotBuildingSetError(NeuralCodeError):
    """A set family violates the building-set axioms."""


class CacheCorruptionError(NeuralCodeError):
    """A cache entry failed its payload hash check."""
