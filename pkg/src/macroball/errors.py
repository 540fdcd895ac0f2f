"""Exception types shared across the library."""


class MacroballError(Exception):
    """Base class for every library-specific failure."""


class NonFiniteError(MacroballError):
    """An integrand returned NaN or +inf at a quadrature node."""


class DepthExceededError(MacroballError):
    """Adaptive bisection hit max_depth before meeting its error target."""


class VolumeOverflowError(MacroballError, OverflowError):
    """Result exceeds the native float range; use the log-space variant."""


class InvalidPointError(MacroballError):
    """Coordinates do not satisfy the hyperboloid constraint."""


class InvalidDirectionError(MacroballError):
    """Direction is not a unit spacelike vector orthogonal to the base point."""


class TailNeverDominatesError(MacroballError):
    """No cut point below the ray-scan ceiling satisfied the tail condition."""


class DegenerateKernelError(MacroballError):
    """lambda*R too small: the kernel mass is below float resolution."""


class UnsupportedDimError(MacroballError):
    """Operation is only implemented for dimensions 2 and 3."""


class MissingExternalError(MacroballError):
    """A required externally-sourced constant is absent from the configuration."""

    def __init__(self, key: str):
        self.key = key
        super().__init__(f"missing external constant: {key}")


class MissingInputError(MacroballError):
    """Neither of the scalar manifold summaries was provided."""


class ConfigError(MacroballError):
    """Configuration file is malformed or violates an invariant."""
