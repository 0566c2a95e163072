"""Exception types shared across the package."""


class DomainError(ValueError):
    """A precondition on arguments was violated."""


class EvaluationError(RuntimeError):
    """Sampling or quadrature produced non-finite values."""


class ConstructionError(RuntimeError):
    """A calibrated construction failed its nondegeneracy requirement."""


class ConfigError(ValueError):
    """A run configuration file is malformed."""
