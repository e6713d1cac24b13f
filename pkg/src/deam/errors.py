"""Exception hierarchy shared across the package."""


class DeamError(Exception):
    """Base class for all package-specific errors."""


class ConfigurationError(DeamError):
    """Invalid configuration, parameters or inputs."""


class InadmissibleFactorError(DeamError):
    """Tree up-factor u does not yield a risk-neutral probability in (0, 1)."""


class ImmediateExerciseError(DeamError):
    """American put quote sits in the immediate-exercise region; no unique
    European price can be backed out of a tree."""


class BracketFailureError(DeamError):
    """No admissible up-factor brackets the target American price."""


class ConvergenceError(DeamError):
    """An iterative routine (bisection, LCP solver, series, quadrature)
    failed to converge within its budget."""


class SelectionError(DeamError):
    """A quote-selection rule produced an empty set."""


class ChainParseError(DeamError):
    """Malformed option-chain input."""
