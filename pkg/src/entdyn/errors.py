"""Exception hierarchy."""


class EntdynError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(EntdynError, ValueError):
    """Operand shapes do not fit the operation."""


class NotHermitianError(EntdynError, ValueError):
    pass


class InvalidStateError(EntdynError, ValueError):
    """A vector or matrix fails pure-state or density-matrix validation."""


class InvalidChannelError(EntdynError, ValueError):
    pass


class ConvergenceError(EntdynError, RuntimeError):
    """The eigensolver ran out of sweeps. Indicates a defect, not bad input."""


class NumericalError(EntdynError, RuntimeError):
    """A trajectory left the set of valid states.

    ``step`` and ``trajectory`` locate the failure when known.
    """

    def __init__(self, message, step=None, trajectory=None):
        super().__init__(message)
        self.step = step
        self.trajectory = trajectory


class ConfigError(EntdynError, ValueError):
    """Bad experiment configuration. ``key`` names the offending entry."""

    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key
