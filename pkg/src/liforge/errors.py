"""Exception hierarchy shared by every liforge module."""


class LiForgeError(Exception):
    """Base class for all computational failures raised by liforge."""


class PoleError(LiForgeError, ZeroDivisionError):
    pass


class PrecisionExhausted(LiForgeError):
    """The requested tolerance cannot be met at the working precision."""


class DomainError(LiForgeError, ValueError):
    pass


class BranchTrackingError(LiForgeError):
    pass


class NearZeroError(LiForgeError):
    """Evaluation height lies (numerically) on a zero ordinate."""


class AmbiguousCountError(LiForgeError):
    pass


class MissedZeroError(LiForgeError):
    """Sign-change search found fewer zeros than the argument principle counts."""

    def __init__(self, msg, deficit=None, interval=None):
        super().__init__(msg)
        self.deficit = deficit
        self.interval = interval


class ParseError(LiForgeError, ValueError):
    def __init__(self, msg, line=None):
        if line is not None:
            msg = f"line {line}: {msg}"
        super().__init__(msg)
        self.line = line


class OrderError(LiForgeError, ValueError):
    pass


class NegativeSummandError(LiForgeError):
    pass


class CutoffError(LiForgeError, ValueError):
    pass


class QuadratureError(LiForgeError):
    pass


class RadiusError(LiForgeError, ValueError):
    pass


class UnsupportedIndex(LiForgeError, ValueError):
    pass


class TailTooLarge(LiForgeError):
    pass


class DivergenceWarning(UserWarning):
    """Binomial resummation terms are not decaying at the end of the b-series."""
