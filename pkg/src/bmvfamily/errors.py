"""Exception types shared across the package."""


class BMVError(Exception):
    """Base class for all package errors."""


class ZeroPolynomial(BMVError, ValueError):
    pass


class InvalidExponent(BMVError, ValueError):
    pass


class SingleLetterWord(BMVError, ValueError):
    """Raised when an operation needs both letters but the word has only one."""


class ComplexityGuard(BMVError, RuntimeError):
    """Raised when an exhaustive search would exceed its configured cap."""


class RangeError(BMVError, ValueError):
    pass


class DegreeMismatch(BMVError, ValueError):
    pass


class WordParseError(BMVError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position
