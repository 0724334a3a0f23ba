"""Shared exception types."""


class BudgetError(RuntimeError):
    """A computation would exceed its configured node or work budget."""


class ExactnessError(ValueError):
    """A quadrature rule cannot integrate the requested polynomial degree exactly."""


class ConfigError(ValueError):
    """An experiment configuration is malformed or inconsistent."""


class OpenRegionError(RuntimeError):
    """The requested (p, q) cell has no proven sharp exponent; refuse to fit."""


class CriticalLineError(RuntimeError):
    """The requested parameter sits on a log-corrected critical line; refuse to fit."""
