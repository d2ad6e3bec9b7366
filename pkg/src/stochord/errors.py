"""Exception types shared across the package."""


class StochordError(Exception):
    """Base class for all package-specific errors."""


class EvaluationDomainError(StochordError, ValueError):
    """A quantity was requested at a point where it is undefined.

    Example: the reversed hazard rate at a point where the cdf is zero.
    """


class ConvergenceError(StochordError, RuntimeError):
    """An iterative numeric routine failed to reach its tolerance."""


class GenerationError(StochordError, RuntimeError):
    """Randomized search failed to produce a certified object within its retry budget."""


class ConfigError(StochordError, ValueError):
    """A configuration document is malformed or violates the schema."""
