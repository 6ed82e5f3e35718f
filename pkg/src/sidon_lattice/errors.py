"""Exception types shared across the package."""


class SidonLatticeError(Exception):
    """Base class for all library errors."""

    code = "error"


class NotPrimePowerError(SidonLatticeError):
    code = "not-prime-power"


class FieldBoundError(SidonLatticeError):
    code = "field-bound"


class EnumerationLimitError(SidonLatticeError):
    code = "enumeration-limit"


class InfiniteQuotientError(SidonLatticeError):
    code = "infinite-quotient"


class SyndromeCollisionError(SidonLatticeError):
    """Raised when two correctable error patterns share a syndrome."""

    code = "syndrome-collision"

    def __init__(self, syndrome, first, second):
        super().__init__(
            f"syndrome {syndrome} shared by error patterns {first} and {second}"
        )
        self.syndrome = syndrome
        self.first = first
        self.second = second
