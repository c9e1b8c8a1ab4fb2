"""Exception hierarchy. Every library error derives from ``FracSpecError``."""


class FracSpecError(Exception):
    pass


class ConfigError(FracSpecError, ValueError):
    pass


class NonFinite(FracSpecError, ValueError):
    pass


class NotHermitian(FracSpecError, ValueError):
    pass


class ConvergenceError(FracSpecError, RuntimeError):
    pass


class NotExpansive(FracSpecError, ValueError):
    pass


class DuplicateDigit(FracSpecError, ValueError):
    pass


class MissingZeroDigit(FracSpecError, ValueError):
    pass


class SizeOverflow(FracSpecError, ValueError):
    pass


class TruncationFailure(FracSpecError, RuntimeError):
    pass


class SizeMismatch(FracSpecError, ValueError):
    pass


class DegenerateDigits(FracSpecError, ValueError):
    pass


class AmbiguousDigit(FracSpecError, ValueError):
    pass


class NoCycles(FracSpecError, ValueError):
    pass


class NoLowerBound(FracSpecError, ValueError):
    pass


class UnknownPreset(ConfigError, KeyError):
    def __str__(self):
        return Exception.__str__(self)
