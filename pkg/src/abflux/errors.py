"""Exception types shared across the package."""


class ConvergenceError(RuntimeError):
    """A numerical procedure did not reach its tolerance.

    ``estimates`` holds the last two successive estimates (the newest last).
    """

    def __init__(self, message, estimates=()):
        super().__init__(message)
        self.estimates = tuple(estimates)


class SingularityError(ValueError):
    """Field evaluated at (or within 1e-15 m of) a point source."""


class DomainError(ValueError):
    """Inputs outside the domain where an operation is defined."""


class InstabilityError(RuntimeError):
    """The flux-locked-loop controller diverged.

    ``trace`` is the experiment trace recorded up to the failure.
    """

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class ConfigError(ValueError):
    """Invalid scenario configuration.

    ``key`` is the dotted ``section.key`` name when one applies.
    """

    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key
