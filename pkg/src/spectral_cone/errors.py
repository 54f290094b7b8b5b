"""Exception types shared across the package."""


class SpectralConeError(Exception):
    """Base class for all package-specific errors."""


class SpaceMismatchError(SpectralConeError, ValueError):
    """Operands live in different state spaces."""


class InvalidWeightsError(SpectralConeError, ValueError):
    """Mixture weights are negative or do not sum to one."""


class NotInConeError(SpectralConeError, ValueError):
    """A point fails the membership test of its state space."""


class ApexError(SpectralConeError, ValueError):
    """The cone apex was passed where a nonzero element is required."""


class DecompositionError(SpectralConeError, RuntimeError):
    """No orthogonal decomposition was found; indicates a geometry bug."""


class NonSpectralSpaceError(SpectralConeError, ValueError):
    """Operation requires a spectral state space."""


class DomainError(SpectralConeError, ValueError):
    """A scalar function was evaluated outside its domain."""


class PreconditionError(SpectralConeError, ValueError):
    """A checker precondition (e.g. reversibility, locality) failed."""
