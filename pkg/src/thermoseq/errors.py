class ThermoError(Exception):
    """Base class for input/validation failures."""


class FormatError(ThermoError):
    pass


class BadMagicError(FormatError):
    pass


class TruncatedError(FormatError):
    pass


class NonFiniteError(FormatError):
    pass


class ZeroDimensionError(FormatError):
    pass


class RoiError(ThermoError):
    pass


class SceneError(ThermoError):
    pass


class DegenerateError(ThermoError):
    """Numerical degeneracy, e.g. a reference ROI with zero spread."""
