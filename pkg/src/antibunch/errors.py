"""Exception types shared across the package."""


class AntibunchError(Exception):
    """Base class for all package-specific failures."""


class ConfigError(AntibunchError):
    """Invalid sweep specification, config file, or preset name."""


class SingularPointError(AntibunchError):
    """A closed-form denominator vanished (parameter point sits on a resonance pole)."""


class UndefinedCorrelationError(AntibunchError):
    """g2 is requested where the cavity field vanishes, so the ratio is 0/0."""


class ConvergenceError(AntibunchError):
    """Time integration did not reach a stationary state.

    Carries the final relative rate of change as ``residual``.
    """

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class DegenerateSteadyStateError(AntibunchError):
    """The Liouvillian kernel is not one-dimensional; no unique steady state."""


class IllConditionedError(AntibunchError):
    """The steady-state linear solve is too ill-conditioned to trust."""
