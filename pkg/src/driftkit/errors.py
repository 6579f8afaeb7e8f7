"""Exception and warning types raised across the toolkit."""


class DriftKitError(Exception):
    """Base class for all toolkit errors."""


class InvalidParameterError(DriftKitError, ValueError):
    """An argument violates an operation's preconditions."""


class WindowTooShortError(DriftKitError, ValueError):
    """A window is too short for the requested embedding."""


class InsufficientStatesError(DriftKitError, ValueError):
    """A phase space has too few states for the requested statistic."""


class IncompatibleSpacesError(DriftKitError, ValueError):
    """Two phase spaces differ in state count or embedding parameters."""


class IncompatibleFeaturesError(DriftKitError, ValueError):
    """Two feature vectors or coefficient sets differ in dimension."""


class ShortStreamWarning(UserWarning):
    """A stream ended before a windowed detector saw a single full window."""
